mod common;

use std::collections::BTreeSet;

use digit_fractals::fractal::{
    equivalence_check, generate, lattice, lattice_cardinality, member, prefractal_by_digits,
    square_count, MembershipAutomaton, Prefractal, DEFAULT_MAX_SQUARES,
};
use digit_fractals::radix::{carry_free, expansions, ratio, DigitSystem, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::systems;

/// Lattice points by scanning a box much larger than the alphabet.
fn lattice_oracle(m: i64, b: i64) -> BTreeSet<(i64, i64)> {
    let ok = |v: i64| -b <= v && v <= m - 1 - b;
    let mut out = BTreeSet::new();
    for k in -2 * m..=2 * m {
        for h in -2 * m..=2 * m {
            if ok(k) && ok(h) && ok(k + h) {
                out.insert((k, h));
            }
        }
    }
    out
}

#[test]
fn lattice_matches_enumeration() {
    for sys in systems(2..=12) {
        let (m, b) = (sys.radix(), sys.balance());
        let oracle = lattice_oracle(m, b);
        let lat = lattice(m, b).unwrap();
        assert_eq!(
            lat.points().iter().copied().collect::<BTreeSet<_>>(),
            oracle
        );
        assert_eq!(lat.points().len(), oracle.len(), "lattice has duplicates");
        assert_eq!(lattice_cardinality(m, b).unwrap(), oracle.len() as u64);
        assert_eq!(
            oracle.len() as i64,
            m * (m + 1) / 2 + b * (m - 1 - b),
            "{sys}"
        );
    }
    // The m(m-1)/2 form does not count the lattice.
    assert_eq!(lattice_oracle(3, 1).len(), 7);
    let (m, b) = (3, 1);
    assert_eq!(m * (m - 1) / 2 + b * (m - 1 - b), 4);
}

fn max_depth(sys: DigitSystem, limit: u128) -> u32 {
    (0..)
        .take_while(|&n| square_count(sys, n).unwrap() <= limit)
        .last()
        .unwrap()
}

#[test]
fn ifs_and_digits_agree_up_to_depth_four() {
    for sys in systems(2..=6) {
        let top = max_depth(sys, 1_000_000).min(4);
        for n in 0..=top {
            assert!(
                equivalence_check(sys, n, DEFAULT_MAX_SQUARES).unwrap(),
                "{sys} n={n}"
            );
        }
    }
}

#[test]
fn cardinality_law_and_symmetry() {
    for sys in systems(2..=6) {
        let l = lattice_cardinality(sys.radix(), sys.balance()).unwrap() as usize;
        let mut p = Prefractal::unit_square(sys);
        let lat = lattice(sys.radix(), sys.balance()).unwrap();
        for n in 1..=max_depth(sys, 200_000).min(5) {
            p = p.iterate(&lat, DEFAULT_MAX_SQUARES).unwrap();
            assert_eq!(p.len(), l.pow(n));
            assert!(p.squares().iter().all(|&(i, j)| p.contains_square(j, i)));
        }
    }
}

/// Least significant alphabet digit of `i`.
fn low_digit(sys: DigitSystem, i: i64) -> i64 {
    let mut d = i.rem_euclid(sys.radix());
    if d > sys.max_digit() {
        d -= sys.radix();
    }
    d
}

#[test]
fn nesting() {
    for sys in systems(2..=6) {
        let top = max_depth(sys, 100_000).min(5);
        let levels: Vec<Prefractal> = (0..=top)
            .map(|n| generate(sys, n, DEFAULT_MAX_SQUARES).unwrap())
            .collect();
        for w in levels.windows(2) {
            let (parent, child) = (&w[0], &w[1]);
            let m = sys.radix();
            for &(i, j) in child.squares() {
                // dropping the last digit lands on a parent square
                let pi = (i - low_digit(sys, i)) / m;
                let pj = (j - low_digit(sys, j)) / m;
                assert!(parent.contains_square(pi, pj), "{sys}");
                if !sys.is_balanced() {
                    // and for b = 0 that parent contains the child geometrically
                    assert_eq!((i.div_euclid(m), j.div_euclid(m)), (pi, pj));
                }
            }
        }
    }
    // With b >= 1 the first step already leaves the unit square.
    let h = generate(DigitSystem::new(3, 1).unwrap(), 1, 100).unwrap();
    assert!(h.contains_square(-1, 0));
    assert!(!Prefractal::unit_square(h.system()).contains_square((-1i64).div_euclid(3), 0));
}

/// Membership by searching all expansion pairs of a length that forces a
/// repeated remainder pair.
fn member_oracle(x: &Rational, y: &Rational, sys: DigitSystem) -> bool {
    let v = sys.value_interval();
    if !v.contains(x) || !v.contains(y) {
        return false;
    }
    let qx = x.denom().to_usize().unwrap();
    let qy = y.denom().to_usize().unwrap();
    let depth = (qx + 1) * (qy + 1) + 1;
    let xs = expansions(x, sys, depth).unwrap();
    let ys = expansions(y, sys, depth).unwrap();
    xs.iter().any(|ex| {
        ys.iter()
            .any(|ey| (1..=depth as i32).all(|t| sys.contains_digit(ex.digit(-t) + ey.digit(-t))))
    })
}

fn random_point<R: Rng>(rng: &mut R, sys: DigitSystem, max_den: i64) -> (Rational, Rational) {
    let v = sys.value_interval();
    let mut coord = || {
        let den = rng.gen_range(1..=max_den);
        let num = rng.gen_range(0..=den);
        &v.lo + ratio(num, den) * v.width()
    };
    (coord(), coord())
}

#[test]
fn membership_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for sys in systems(2..=5) {
        let mut seen = [0usize; 2];
        for _ in 0..150 {
            let (x, y) = random_point(&mut rng, sys, 9);
            let got = member(&x, &y, sys).unwrap();
            assert_eq!(got, member_oracle(&x, &y, sys), "({x}, {y}) in {sys}");
            assert_eq!(got, member(&y, &x, sys).unwrap());
            seen[got as usize] += 1;
        }
        assert!(seen[0] > 0 && seen[1] > 0, "{sys}: {seen:?}");
    }
}

#[test]
fn members_lie_in_every_cover() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for sys in systems(2..=4) {
        let covers: Vec<Prefractal> = (0..=max_depth(sys, 2_000_000).min(6))
            .map(|n| generate(sys, n, DEFAULT_MAX_SQUARES).unwrap())
            .collect();
        for _ in 0..200 {
            let (x, y) = random_point(&mut rng, sys, 81);
            if member(&x, &y, sys).unwrap() {
                for p in &covers {
                    assert!(
                        p.tile_covers_point(&x, &y),
                        "({x}, {y}) depth {}",
                        p.depth()
                    );
                    if !sys.is_balanced() {
                        assert!(p.covers_point(&x, &y));
                    }
                }
            }
        }
    }
}

#[test]
fn carry_free_bridge_for_m_adic_points() {
    for m in 2..=5i64 {
        let sys = DigitSystem::new(m, 0).unwrap();
        for k in 1..=3u32 {
            let den = m.pow(k);
            for a in 0..=den {
                for c in 0..=den {
                    let (x, y) = (ratio(a, den), ratio(c, den));
                    let xs = expansions(&x, sys, k as usize + 1).unwrap();
                    let ys = expansions(&y, sys, k as usize + 1).unwrap();
                    let witness = xs
                        .iter()
                        .any(|ex| ys.iter().any(|ey| carry_free(ex, ey).unwrap()));
                    assert_eq!(member(&x, &y, sys).unwrap(), witness, "({x}, {y}) base {m}");
                }
            }
        }
    }
}

#[test]
fn automaton_terminates_for_large_denominators() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (m, b) in [(2, 0), (3, 0), (3, 1), (5, 2)] {
        let sys = DigitSystem::new(m, b).unwrap();
        for _ in 0..100 {
            let (x, y) = random_point(&mut rng, sys, 10_000);
            let mut auto = MembershipAutomaton::with_state_cap(sys, 1_000_000);
            auto.decide(&x, &y).unwrap();
        }
    }
    // long cycles: x paired with 0, and with its digit complement
    let sys = DigitSystem::new(2, 0).unwrap();
    for q in [9_973i64, 9_949, 10_000 - 1] {
        let x = ratio(1, q);
        let mut auto = MembershipAutomaton::with_state_cap(sys, 1_000_000);
        assert!(auto.decide(&x, &ratio(0, 1)).unwrap());
        let mut auto = MembershipAutomaton::with_state_cap(sys, 1_000_000);
        assert!(auto.decide(&x, &(ratio(1, 1) - &x)).unwrap());
    }
}

#[test]
fn digit_prefractal_uses_valid_indices() {
    for sys in systems(2..=5) {
        let p = prefractal_by_digits(sys, 2);
        let m2 = BigInt::from(sys.radix()).pow(2);
        for &(i, j) in p.squares() {
            for v in [i, j] {
                let d = digit_fractals::radix::int_to_digits_i64(v, sys).unwrap();
                assert!(d.max_exponent().is_none_or(|e| e < 2));
                assert!(BigInt::from(v.abs()) < m2);
            }
        }
    }
}
