//! Randomized cross-checks of independent routes to the same answer.

use proptest::prelude::*;

use incidence::catalog::{generate, CatalogKey};
use incidence::complex::IncidenceComplex;
use incidence::json::{complex_to_json, complex_from_json, parse_json, to_json_string};
use incidence::perm::{Perm, PermGroup};
use incidence::poset::FaceId;
use incidence::power::power_complex;
use incidence::validate::validate;

fn cat(name: &str, params: &[i64]) -> IncidenceComplex {
    generate(&CatalogKey::from_name_params(name, params).unwrap()).unwrap()
}

/// Small catalog instances for structural properties.
fn small_complex() -> impl Strategy<Value = IncidenceComplex> {
    prop_oneof![
        (1i64..=4).prop_map(|v| cat("simplex", &[v])),
        (2i64..=7).prop_map(|q| cat("polygon", &[q])),
        (2i64..=4).prop_map(|v| cat("rank1", &[v])),
        Just(cat("cube", &[3])),
        (2i64..=3).prop_map(|s| cat("torus44", &[s])),
    ]
}

fn random_perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|img| Perm::from_images(img).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// The stabilizer chain's order must agree with naive closure under
    /// products, which touches none of the chain machinery.
    #[test]
    fn chain_order_matches_product_closure(
        gens in (3usize..=6).prop_flat_map(|d| {
            proptest::collection::vec(random_perm(d), 1..=3)
        })
    ) {
        let degree = gens[0].degree();
        let group = PermGroup::from_generators(degree, gens.clone()).unwrap();

        let mut elems: std::collections::HashSet<Perm> =
            [Perm::identity(degree)].into_iter().collect();
        loop {
            let fresh: Vec<Perm> = elems
                .iter()
                .flat_map(|e| gens.iter().map(move |g| e.then(g)))
                .filter(|p| !elems.contains(p))
                .collect();
            if fresh.is_empty() {
                break;
            }
            elems.extend(fresh);
        }
        prop_assert_eq!(group.order(), elems.len() as u128);
        for e in &elems {
            prop_assert!(group.contains(e));
        }
    }

    /// Writing and re-reading a complex reproduces the identical poset.
    #[test]
    fn json_round_trip_is_identity(c in small_complex()) {
        let text = to_json_string(&complex_to_json(&c));
        let back = complex_from_json(&parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_poset(), c.to_poset());
    }

    /// Face counts of a power agree with the closed-form count: one adjoined
    /// least face plus, per source face, one face for every assignment of
    /// values to the coordinates its vertex set misses.
    #[test]
    fn power_face_count_formula(c in small_complex(), n in 2u16..=4) {
        prop_assume!(c.is_vertex_describable());
        let v = c.vertices().len() as u32;
        let expected: u128 = 1 + (0..c.face_count() as u32)
            .map(|f| {
                let missing = v - c.vertex_set(FaceId(f)).len() as u32;
                (n as u128).pow(missing)
            })
            .sum::<u128>();
        prop_assume!(expected <= 100_000);
        let p = power_complex(&c, n).unwrap();
        prop_assert_eq!(p.complex().face_count() as u128, expected);
    }

    /// Every section of a complex is itself a complex, and its homogeneous
    /// counts are the matching slice of the ambient ones.
    #[test]
    fn sections_are_complexes(c in small_complex(), pick in any::<prop::sample::Index>()) {
        let pairs: Vec<(FaceId, FaceId)> = (0..c.face_count() as u32)
            .flat_map(|low| {
                (0..c.face_count() as u32).filter_map(move |high| {
                    (low != high).then_some((FaceId(low), FaceId(high)))
                })
            })
            .filter(|&(low, high)| {
                c.leq(low, high) && c.face_rank(high) - c.face_rank(low) >= 2
            })
            .collect();
        prop_assume!(!pairs.is_empty());
        let (low, high) = pairs[pick.index(pairs.len())];

        let s = c.section(low, high).unwrap();
        let report = validate(&s.to_poset()).unwrap();
        prop_assert!(report.is_complex);

        let lo = (c.face_rank(low) + 1) as usize;
        let hi = c.face_rank(high) as usize;
        prop_assert_eq!(s.c_vector(), &c.c_vector()[lo..hi]);
    }
}
