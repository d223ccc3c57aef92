use polyweight::lattice::box_points;
use polyweight::phi::{has_nonnegative_representative, Outcome};
use polyweight::*;
use proptest::prelude::*;

fn valid() -> Vec<GroupDatum> {
    vec![
        build_gl(2).unwrap(),
        build_gl(3).unwrap(),
        build_gsp(4).unwrap(),
        build_gsp(6).unwrap(),
        build_go_odd(3).unwrap(),
        build_go_odd(5).unwrap(),
        build_levi(&[2, 3]).unwrap(),
    ]
}

fn datum_and_weights(k: usize) -> impl Strategy<Value = (GroupDatum, Vec<AmbientWeight>)> {
    prop::sample::select(valid()).prop_flat_map(move |g| {
        let n = g.ambient_dim();
        let w = prop::collection::vec(
            prop::collection::vec(-12i64..=12, n).prop_map(AmbientWeight::new),
            k,
        );
        (Just(g), w)
    })
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn kernel_invariance((g, ws) in datum_and_weights(1), t in -4i64..=4) {
        for k in g.lattice().kernel_basis() {
            let shifted = ws[0].add_scaled(t, k);
            prop_assert_eq!(phi(&shifted, &g).unwrap(), phi(&ws[0], &g).unwrap());
        }
    }

    #[test]
    fn positive_homogeneity((g, ws) in datum_and_weights(1), c in 0i64..=9) {
        let scaled: Vec<i64> = phi(&ws[0], &g).unwrap().iter().map(|x| c * x).collect();
        prop_assert_eq!(phi(&ws[0].scale(c), &g).unwrap(), scaled);
    }

    #[test]
    fn x0_shift_additivity((g, ws) in datum_and_weights(1), cs in prop::collection::vec(-6i64..=6, 2)) {
        let ds = g.d();
        let c = &cs[..ds.len()];
        let shifted = c.iter().zip(&ds).fold(ws[0].clone(), |acc, (&k, d)| acc.add_scaled(k, d));
        prop_assert_eq!(phi(&shifted, &g).unwrap(), add(&phi(&ws[0], &g).unwrap(), c));
    }

    #[test]
    fn superadditive_with_witnessed_equality((g, ws) in datum_and_weights(2)) {
        let (a, b) = (&ws[0], &ws[1]);
        let target = add(&phi(a, &g).unwrap(), &phi(b, &g).unwrap());
        let sum = phi(&(a + b), &g).unwrap();
        prop_assert!(sum.iter().zip(&target).all(|(s, t)| s >= t));
        let w = find_witness_w(a, b, &g).unwrap();
        prop_assert!(g.weyl_contains(&w));
        prop_assert_eq!(phi(&(&w.act(a).unwrap() + b), &g).unwrap(), target);
    }

    #[test]
    fn kernel_elements_are_block_constant((g, _ws) in datum_and_weights(0), ts in prop::collection::vec(-5i64..=5, 3)) {
        let n = g.ambient_dim();
        let mu = ts
            .iter()
            .zip(g.lattice().kernel_basis())
            .fold(AmbientWeight::zero(n), |acc, (&t, k)| acc.add_scaled(t, k));
        prop_assert!(kernel_block_constancy(&mu, &g).unwrap());
    }

    #[test]
    fn phi_sign_matches_representative_search((g, ws) in datum_and_weights(1)) {
        let spread = 3 + ws[0].coords().iter().map(|x| x.abs()).max().unwrap();
        let oracle = has_nonnegative_representative(&ws[0], g.lattice().kernel_basis(), spread);
        prop_assert_eq!(phi(&ws[0], &g).unwrap().iter().all(|&x| x >= 0), oracle);
    }
}

#[test]
fn go_even_phi_is_kernel_invariant() {
    let g = build_go_even(8).unwrap();
    let data = PhiData::from_datum(&g);
    for v in box_points(8, -1, 1).step_by(37) {
        for k in g.lattice().kernel_basis() {
            assert_eq!(
                phi_ambient(&v.add_scaled(3, k), &data).unwrap(),
                phi_ambient(&v, &data).unwrap()
            );
        }
    }
}

#[test]
fn assumption_certified_for_valid_data() {
    for g in [build_gl(2).unwrap(), build_gsp(4).unwrap(), build_go_odd(3).unwrap()] {
        for (p, r) in [(2, 1), (3, 1), (2, 2)] {
            let rep = check_assumption(&g, p, r, 2).unwrap();
            assert!(rep.all_pass(), "{rep:?}");
        }
    }
}

#[test]
fn assumption_reports_injected_failure() {
    // Claiming n = 2 for the middle block of go_odd(3) breaks property (4).
    let mut parts = build_go_odd(3).unwrap().into_parts();
    parts.n_matrix[1][0] = 2;
    let g = GroupDatum::from_parts(parts).unwrap();
    assert!(!g.report().d);
    let rep = check_assumption(&g, 2, 1, 2).unwrap();
    assert!(matches!(rep.x0_bijection, Outcome::Fail { .. }));
}
