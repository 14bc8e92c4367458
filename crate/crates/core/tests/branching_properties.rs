use kmbranch_core::branching::{
    branch_table_via_steinberg, branch_via_paths, dotted_dominant_candidates, peel_oracle, weight_multiplicity,
    KostantMultiplicity, Steinberg,
};
use kmbranch_core::path::enumerate_ls_paths;
use kmbranch_core::rational::rat;
use kmbranch_core::weyl::reflect;
use kmbranch_core::{AffineAlgebra, Basis, Weight, WindingData};
use proptest::prelude::*;

fn dominant(l: usize, level: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, rem: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == n {
            prefix.push(rem);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in 0..=rem {
            prefix.push(k);
            go(n, rem - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(l + 1, level, &mut Vec::new(), &mut out);
    out
}

#[test]
fn steinberg_and_peel_agree_on_small_triples() {
    for (l, depth) in [(1usize, 4u32), (2, 2)] {
        let alg = AffineAlgebra::affine_a(l).unwrap();
        for level in 1..=2 {
            for labels in dominant(l, level) {
                let lambda = alg.weight(&labels).unwrap();
                for u in 1..=3 {
                    let w = WindingData::new(&alg, u).unwrap();
                    let st = branch_table_via_steinberg(&alg, &lambda, &w, depth).unwrap();
                    let peel = peel_oracle(&alg, &lambda, &w, depth, 0).unwrap();
                    assert_eq!(st.to_map(), peel.to_map(), "A{l} {labels:?} u={u}");
                    if u == 1 {
                        let paths = branch_via_paths(&alg, &lambda, &w, depth).unwrap();
                        assert_eq!(paths.to_map(), st.to_map());
                    }
                }
            }
        }
    }
}

#[test]
fn highest_component_and_level_bookkeeping() {
    let alg = AffineAlgebra::affine_a(2).unwrap();
    for labels in dominant(2, 2) {
        let lambda = alg.weight(&labels).unwrap();
        for u in [2, 3] {
            let w = WindingData::new(&alg, u).unwrap();
            let kd = w.central_element(&alg);
            for table in [
                branch_via_paths(&alg, &lambda, &w, 2).unwrap(),
                branch_table_via_steinberg(&alg, &lambda, &w, 2).unwrap(),
            ] {
                assert_eq!(table.multiplicity(&lambda), 1);
                for row in &table.rows {
                    assert!(w.is_dotted_dominant_integral(&row.weight));
                    assert_eq!(row.weight.pair(&kd), alg.level(&lambda) * rat(u));
                    assert!(row.depth <= 2);
                }
            }
        }
    }
}

#[test]
fn steinberg_is_nonnegative_on_every_candidate() {
    let alg = AffineAlgebra::affine_a(1).unwrap();
    for labels in dominant(1, 2) {
        let lambda = alg.weight(&labels).unwrap();
        for u in [2, 3, 5] {
            let w = WindingData::new(&alg, u).unwrap();
            let mut st = Steinberg::new(&alg, &w).unwrap();
            for c in dotted_dominant_candidates(&alg, &lambda, &w, 4).unwrap() {
                st.coefficient(&lambda, &c).unwrap();
            }
        }
    }
}

#[test]
fn dotted_characters_of_u_one_match_plain_ones() {
    let alg = AffineAlgebra::affine_a(1).unwrap();
    let w = WindingData::new(&alg, 1).unwrap();
    let lambda = alg.weight(&[1, 1]).unwrap();
    let mut plain = KostantMultiplicity::plain(&alg).unwrap();
    let mut dotted = KostantMultiplicity::dotted(&alg, &w).unwrap();
    assert_eq!(
        plain.character(&lambda, &lambda, 3).unwrap(),
        dotted.character(&lambda, &lambda, 3).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplicity_is_weyl_invariant(l0 in 0i64..3, l1 in 0i64..3, pick in 0usize..64, i in 0usize..2) {
        prop_assume!(l0 + l1 > 0);
        let alg = AffineAlgebra::affine_a(1).unwrap();
        let plain = Basis::plain(&alg);
        let lambda = alg.weight(&[l0, l1]).unwrap();
        let weights: Vec<Weight> = enumerate_ls_paths(&plain, &lambda, 2).unwrap().iter().map(|p| p.endpoint()).collect();
        let mu = &weights[pick % weights.len()];
        let image = reflect(&plain, i, mu).unwrap();
        prop_assert_eq!(
            weight_multiplicity(&alg, &lambda, mu, false).unwrap(),
            weight_multiplicity(&alg, &lambda, &image, false).unwrap()
        );
    }

    #[test]
    fn multiplicity_is_cutoff_stable(l0 in 0i64..3, l1 in 0i64..3, k0 in 0i64..3, k1 in 0i64..4) {
        prop_assume!(l0 + l1 > 0);
        let alg = AffineAlgebra::affine_a(1).unwrap();
        let lambda = alg.weight(&[l0, l1]).unwrap();
        let mu = &lambda - &alg.from_root_coords(&[rat(k0), rat(k1)]);
        prop_assert!(weight_multiplicity(&alg, &lambda, &mu, true).is_ok());
    }
}
