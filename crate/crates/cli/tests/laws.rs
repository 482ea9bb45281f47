#![allow(clippy::needless_range_loop)]

mod common;

use common::{gamma_matrix, mat_identity, mat_mul, poisson_oracle, to_matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starprod::algebra::{int, Metric, Multivector, PhasePoly, ScalarH, Var};
use starprod::mechanics::{classical_limit_check, kinetic_commutator_residuals, poisson_bracket};
use starprod::sample::{random_constant_multivector, random_multivector, random_poly, random_potentials};
use starprod::star::{ProductKind, StarKind};

const METRICS: [Metric; 2] = [Metric::Nonstandard, Metric::Standard];

#[test]
fn gamma_matrices_square_to_the_metric() {
    for metric in METRICS {
        for mu in 0..4 {
            let g = gamma_matrix(mu, metric);
            let sq = mat_mul(&g, &g);
            let eta = ScalarH::from_int(metric.eta(mu, mu));
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { eta.clone() } else { ScalarH::zero() };
                    assert_eq!(sq[i][j], want);
                }
            }
        }
    }
}

#[test]
fn clifford_product_matches_matrix_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1f);
    for metric in METRICS {
        let c = ProductKind::clifford(metric);
        for _ in 0..250 {
            let a = random_constant_multivector(&mut rng, 6);
            let b = random_constant_multivector(&mut rng, 6);
            let lhs = to_matrix(&c.star(&a, &b), metric);
            let rhs = mat_mul(&to_matrix(&a, metric), &to_matrix(&b, metric));
            assert_eq!(lhs, rhs, "a = {a}, b = {b}, {metric}");
        }
    }
    // the representation is faithful, so agreement is not vacuous
    assert_ne!(to_matrix(&Multivector::gamma(0), Metric::Standard), mat_identity());
}

fn associativity(kind: StarKind, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for metric in METRICS {
        let k = ProductKind::new(kind, metric);
        for _ in 0..100 {
            let a = random_multivector(&mut rng, 3, 3);
            let b = random_multivector(&mut rng, 3, 3);
            let c = random_multivector(&mut rng, 3, 3);
            let left = k.star(&k.star(&a, &b), &c);
            let right = k.star(&a, &k.star(&b, &c));
            assert_eq!(left, right, "{kind} {metric}: a = {a}, b = {b}, c = {c}");
        }
    }
}

#[test]
fn clifford_is_associative() {
    associativity(StarKind::Clifford, 1);
}

#[test]
fn moyal3_is_associative() {
    associativity(StarKind::Moyal3, 2);
}

#[test]
fn moyal4_is_associative() {
    associativity(StarKind::Moyal4, 3);
}

#[test]
fn moyal_clifford_is_associative() {
    associativity(StarKind::MoyalClifford, 4);
}

#[test]
fn moyal3_clifford_is_associative() {
    associativity(StarKind::Moyal3Clifford, 5);
}

#[test]
fn unit_and_classical_factorization() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let one = Multivector::one();
    for _ in 0..100 {
        let a = random_multivector(&mut rng, 3, 4);
        let b = random_multivector(&mut rng, 3, 4);
        for kind in StarKind::ALL {
            let k = ProductKind::new(kind, Metric::Nonstandard);
            assert_eq!(k.star(&one, &a), a);
            assert_eq!(k.star(&a, &one), a);
        }
        let m = ProductKind::moyal4(Metric::Nonstandard);
        assert_eq!(m.star(&a, &b).hbar_set_zero(), &a.hbar_set_zero() * &b.hbar_set_zero());
    }
}

#[test]
fn moyal_of_phase_functions_is_metric_blind() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let f = Multivector::from_poly(random_poly(&mut rng, 3, 4));
        let g = Multivector::from_poly(random_poly(&mut rng, 3, 4));
        assert_eq!(
            ProductKind::moyal4(Metric::Standard).star(&f, &g),
            ProductKind::moyal4(Metric::Nonstandard).star(&f, &g)
        );
    }
}

#[test]
fn canonical_brackets() {
    for mu in 0..4 {
        for nu in 0..4 {
            let delta = PhasePoly::constant(ScalarH::from_int(i64::from(mu == nu)));
            assert_eq!(poisson_bracket(&PhasePoly::q(mu), &PhasePoly::p(nu)), delta);
            assert!(poisson_bracket(&PhasePoly::q(mu), &PhasePoly::q(nu)).is_zero());
            assert!(poisson_bracket(&PhasePoly::p(mu), &PhasePoly::p(nu)).is_zero());
        }
    }
}

#[test]
fn poisson_bracket_matches_oracle_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..100 {
        let f = random_poly(&mut rng, 3, 3);
        let g = random_poly(&mut rng, 3, 3);
        let h = random_poly(&mut rng, 3, 3);
        assert_eq!(poisson_bracket(&f, &g), poisson_oracle(&f, &g));
        let jacobi = &(&poisson_bracket(&f, &poisson_bracket(&g, &h)) + &poisson_bracket(&g, &poisson_bracket(&h, &f)))
            + &poisson_bracket(&h, &poisson_bracket(&f, &g));
        assert!(jacobi.is_zero());
    }
}

#[test]
fn star_commutator_reduces_to_poisson_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let m = ProductKind::moyal4(Metric::Nonstandard);
    for _ in 0..100 {
        let f = random_poly(&mut rng, 4, 4).hbar_set_zero();
        let g = random_poly(&mut rng, 4, 4).hbar_set_zero();
        assert!(classical_limit_check(&f, &g).unwrap());
        let comm = m.commutator(&Multivector::from_poly(f.clone()), &Multivector::from_poly(g.clone()));
        let limit = comm.divide_by_ihbar().unwrap().hbar_set_zero();
        assert_eq!(limit, Multivector::from_poly(poisson_oracle(&f, &g)));
    }
}

#[test]
fn kinetic_commutator_for_random_potentials() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 0..20 {
        let a = random_potentials(&mut rng, if n % 2 == 0 { 1 } else { 2 }, 4);
        let residuals = kinetic_commutator_residuals(&a, &int(2));
        assert!(residuals.iter().flatten().all(Multivector::is_zero));
        // oracle: [π_μ, π_ν] = iħe(∂_μA_ν − ∂_νA_μ)
        let m = ProductKind::moyal4(Metric::Standard);
        for mu in 0..4 {
            for nu in 0..4 {
                let pi = |k: usize| Multivector::from_poly(&PhasePoly::p(k) - &a[k].scale_rational(&int(2)));
                let f = &a[nu].partial(Var::q(mu)) - &a[mu].partial(Var::q(nu));
                let want = f.scale(&ScalarH::i_hbar().scale_rational(&int(2)));
                assert_eq!(m.commutator(&pi(mu), &pi(nu)), Multivector::from_poly(want));
            }
        }
    }
}
