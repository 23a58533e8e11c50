use num_traits::{One, Zero};
use proptest::prelude::*;

use clarr_core::arrangement::{intersect, Component, Curve, ProjPoint};
use clarr_core::local::{milnor, milnor_in_chart, tjurina, tjurina_in_chart};
use clarr_core::matrix::{exact_rank, ExactMatrix};
use clarr_core::poly::{graded_dim, ideal_piece_rank, HPoly};
use clarr_core::scalars::{rat, rat_frac, QuadScalar};
use clarr_core::Error;

fn quad(m: i64) -> impl Strategy<Value = QuadScalar> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, da, b, db)| {
        let b = if m == 0 { 0 } else { b };
        QuadScalar::new(rat_frac(a, da), rat_frac(b, db), m)
    })
}

fn triple() -> impl Strategy<Value = (QuadScalar, QuadScalar, QuadScalar)> {
    prop_oneof![Just(0i64), Just(2), Just(-1), Just(5)].prop_flat_map(|m| (quad(m), quad(m), quad(m)))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(prop::collection::vec(-2i64..3, c), r)
    })
}

#[allow(clippy::needless_range_loop)]
fn naive_rank(mut rows: Vec<Vec<QuadScalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for i in rank + 1..rows.len() {
            let f = &rows[i][col] / &rows[rank][col];
            for j in col..cols {
                let t = &f * &rows[rank][j];
                rows[i][j] = &rows[i][j] - &t;
            }
        }
        rank += 1;
    }
    rank
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-5i64..0, 1i64..6]
}

fn point() -> impl Strategy<Value = [i64; 3]> {
    [nonzero(), nonzero(), nonzero()]
}

fn cross(p: [i64; 3], q: [i64; 3]) -> [i64; 3] {
    [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ]
}

/// Distinct lines through `p`, one per direction that gives a new line.
fn lines_through(p: [i64; 3], dirs: &[[i64; 3]]) -> Vec<Component> {
    let mut out: Vec<Component> = Vec::new();
    for d in dirs {
        let c = cross(p, *d);
        if c == [0, 0, 0] {
            continue;
        }
        let line = Component::line(format!("l{}", out.len()), c.map(rat)).unwrap();
        if !out.iter().any(|o| o.poly().is_proportional(line.poly())) {
            out.push(line);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in triple()) {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x - &x, QuadScalar::zero());
        if !x.is_zero() {
            prop_assert_eq!(&x * &(&QuadScalar::one() / &x), QuadScalar::one());
        }
    }

    #[test]
    fn inverse(x in quad(3)) {
        prop_assume!(!x.is_zero());
        prop_assert_eq!(&x * &x.try_inv().unwrap(), QuadScalar::one());
    }

    #[test]
    fn rank_matches_naive_elimination(m in small_matrix(), quadratic in any::<bool>()) {
        let s = QuadScalar::sqrt_of(2);
        let rows: Vec<Vec<QuadScalar>> = m
            .iter()
            .enumerate()
            .map(|(i, r)| {
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| {
                        let a = QuadScalar::from(v);
                        if quadratic && (i + j) % 2 == 0 { a * &s } else { a }
                    })
                    .collect()
            })
            .collect();
        let want = naive_rank(rows.clone());
        prop_assert_eq!(exact_rank(&ExactMatrix::from_dense(rows)).unwrap(), want);
    }

    #[test]
    fn ideal_piece_rank_is_bounded(c in prop::collection::vec(-3i64..4, 6), k in 0i64..7) {
        let coeffs: [_; 6] = std::array::from_fn(|i| rat(c[i]));
        let f = HPoly::conic(&coeffs);
        prop_assume!(!f.is_zero());
        let gens = f.partials();
        let r = ideal_piece_rank(&gens, k).unwrap();
        let nonzero = gens.iter().filter(|g| !g.is_zero()).count();
        prop_assert!(r <= graded_dim(k));
        prop_assert!(r <= nonzero * graded_dim(k - 1));
        // the ideal grows with the degree once it is nonzero
        let next = ideal_piece_rank(&gens, k + 1).unwrap();
        prop_assert!(r == 0 || next > r || next == graded_dim(k + 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ordinary_points(p in point(), dirs in prop::collection::vec(point(), 2..6)) {
        let lines = lines_through(p, &dirs);
        prop_assume!(lines.len() >= 2);
        let m = lines.len();
        let curve = Curve::new(lines).unwrap();
        let pt = ProjPoint::rational(p.map(rat)).unwrap();
        let e = (m - 1) * (m - 1);
        prop_assert_eq!(milnor(curve.poly(), &pt).unwrap(), e);
        prop_assert_eq!(tjurina(curve.poly(), &pt).unwrap(), e);
    }

    #[test]
    fn charts_agree(p in point(), dirs in prop::collection::vec(point(), 2..4),
                    c in prop::collection::vec(nonzero(), 5)) {
        let mut comps = lines_through(p, &dirs);
        // conic through p, coefficients scaled to keep integers
        let partial = c[0] * p[0] * p[0] + c[1] * p[0] * p[1] + c[2] * p[0] * p[2]
            + c[3] * p[1] * p[1] + c[4] * p[1] * p[2];
        let zz = p[2] * p[2];
        let co = [c[0] * zz, c[1] * zz, c[2] * zz, c[3] * zz, c[4] * zz, -partial];
        if let Ok(q) = Component::conic("q", co.map(rat)) {
            comps.push(q);
        }
        let Ok(curve) = Curve::new(comps) else { return Ok(()) };
        let pt = ProjPoint::rational(p.map(rat)).unwrap();
        let f = curve.poly();
        let mu: Vec<usize> = (0..3).map(|ch| milnor_in_chart(f, &pt, ch).unwrap()).collect();
        let tau: Vec<usize> = (0..3).map(|ch| tjurina_in_chart(f, &pt, ch).unwrap()).collect();
        prop_assert!(mu.iter().all(|x| *x == mu[0]), "{:?}", mu);
        prop_assert!(tau.iter().all(|x| *x == tau[0]), "{:?}", tau);
    }

    #[test]
    fn bezout(a in prop::collection::vec(-3i64..4, 6), b in prop::collection::vec(-3i64..4, 3)) {
        let qc: [_; 6] = std::array::from_fn(|i| rat(a[i]));
        let lc: [_; 3] = std::array::from_fn(|i| rat(b[i]));
        let (Ok(conic), Ok(line)) = (Component::conic("q", qc), Component::line("l", lc)) else {
            return Ok(());
        };
        prop_assume!(!conic.poly().is_proportional(line.poly()));
        match intersect(&conic, &line) {
            Ok(recs) => {
                let total: usize = recs.iter().map(|r| r.multiplicity).sum();
                prop_assert_eq!(total, 2);
            }
            Err(Error::UnrepresentablePoint(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn conic_pairs_bezout(a in prop::collection::vec(-2i64..3, 6), b in prop::collection::vec(-2i64..3, 6)) {
        let ac: [_; 6] = std::array::from_fn(|i| rat(a[i]));
        let bc: [_; 6] = std::array::from_fn(|i| rat(b[i]));
        let (Ok(p), Ok(q)) = (Component::conic("p", ac), Component::conic("q", bc)) else {
            return Ok(());
        };
        prop_assume!(!p.poly().is_proportional(q.poly()));
        match intersect(&p, &q) {
            Ok(recs) => {
                let total: usize = recs.iter().map(|r| r.multiplicity).sum();
                prop_assert_eq!(total, 4);
            }
            Err(Error::UnrepresentablePoint(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn delete_then_add(lines in prop::collection::vec(prop::collection::vec(-3i64..4, 3), 2..5),
                       pick in any::<prop::sample::Index>()) {
        let mut comps: Vec<Component> = Vec::new();
        for (i, c) in lines.iter().enumerate() {
            let Ok(l) = Component::line(format!("l{i}"), [rat(c[0]), rat(c[1]), rat(c[2])]) else {
                continue;
            };
            if !comps.iter().any(|o| o.poly().is_proportional(l.poly())) {
                comps.push(l);
            }
        }
        prop_assume!(comps.len() >= 2);
        let curve = Curve::new(comps).unwrap();
        let target = curve.components()[pick.index(curve.components().len())].clone();
        let back = curve.delete(target.id()).unwrap().add(target).unwrap();
        prop_assert!(back.poly().is_proportional(curve.poly()));
        let pts = |c: &Curve| -> Vec<ProjPoint> {
            c.singular_points().unwrap().into_iter().map(|s| s.point).collect()
        };
        prop_assert_eq!(pts(&back), pts(&curve));
    }
}
