use proptest::prelude::*;
use umconv::blockcode::{base_field_closure_check, is_mds_block};
use umconv::cli::desc_from_bundle;
use umconv::constructions::{admissible_parameters, build_default, Family, FamilySpec, FieldSetup};
use umconv::convcode::minimality_check;
use umconv::fixtures::reference_code;
use umconv::galois::{ExtField, Field, FiniteField};
use umconv::Error;

const QS: [u32; 6] = [3, 4, 5, 7, 8, 9];

fn all_specs() -> Vec<FamilySpec> {
    QS.iter().flat_map(|&q| admissible_parameters(q, &Family::ALL)).collect()
}

fn sorted_rows(m: &umconv::FMatrix) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    rows.sort();
    rows
}

#[test]
fn admissible_sets_are_valid_and_sorted() {
    assert_eq!(admissible_parameters(3, &Family::ALL), vec![FamilySpec::grs(3, 1, 1)]);
    for q in QS {
        let specs = admissible_parameters(q, &Family::ALL);
        assert!(specs.windows(2).all(|w| w[0] < w[1]));
        for s in &specs {
            s.validate().unwrap();
        }
    }
    let f8 = admissible_parameters(8, &[Family::CyclicParity]);
    assert_eq!(f8, (1..=3).rev().map(|t| FamilySpec::cyclic_parity(8, t)).collect::<Vec<_>>());
    assert!(admissible_parameters(9, &[Family::CyclicParity]).is_empty());
}

#[test]
fn bundles_split_an_mds_block_code() {
    for spec in all_specs() {
        let b = build_default(spec).unwrap();
        let tag = spec.describe();
        let (n, k, delta) = spec.conv_params();
        assert_eq!((b.desc.n, b.desc.k, b.desc.delta), (n, k, delta), "{tag}");
        assert_eq!(b.block.n, spec.n);
        assert_eq!(b.block.k, spec.k, "{tag}");
        assert!(b.block.is_mds, "{tag}");
        assert_eq!(b.block.d, spec.n - spec.k + 1);

        let stacked = b.h0.vstack(&b.h1).unwrap();
        assert_eq!(stacked.rows(), spec.n - spec.k, "{tag}");
        assert_eq!(stacked.rank(), spec.n - spec.k, "{tag}");
        assert_eq!(stacked.vstack(&b.block.parity).unwrap().rank(), spec.n - spec.k, "{tag}");
        assert_eq!(b.h0.rows(), n - k, "{tag}");
        assert!(is_mds_block(&b.h0, 1 << 26).unwrap().is_mds, "{tag}");

        let m = minimality_check(&b.parity).unwrap();
        assert!(m.is_minimal(), "{tag}");
        assert_eq!(b.desc.row_degrees.iter().sum::<usize>(), delta, "{tag}");

        // H1 sits at the bottom with zero rows above it
        let pad = b.h0.rows() - b.h1.rows();
        let g1 = b.parity.coeff(1);
        assert!((0..pad).all(|r| g1.row(r).iter().all(|&x| x == 0)), "{tag}");
        assert_eq!(sorted_rows(&g1.select_rows(&(pad..g1.rows()).collect::<Vec<_>>()).unwrap()), sorted_rows(&b.h1));
        assert_eq!(b.parity.coeff(0), b.h0);
    }
}

#[test]
fn stacked_rows_match_the_block_parity_check() {
    for spec in all_specs() {
        let b = build_default(spec).unwrap();
        if spec.family == Family::CyclicParity {
            continue;
        }
        let stacked = b.h0.vstack(&b.h1).unwrap();
        assert_eq!(sorted_rows(&stacked), sorted_rows(&b.block.parity), "{}", spec.describe());
    }
}

#[test]
fn reference_entry_with_memory() {
    let b = reference_code(4).unwrap().build().unwrap();
    // theta^2 + (1 + theta + theta^2) D
    assert_eq!(b.parity.entry(2, 1), vec![4, 7]);
}

#[test]
fn length_q_plus_one_polynomials_are_in_the_base_field() {
    for q in [5u32, 7, 8, 9] {
        let f = Field::of_order(q).unwrap();
        let e = ExtField::new(&f, None, None).unwrap();
        let norm = e.pow(e.theta_ext(), q as i64 + 1).unwrap();
        assert!(e.in_base(norm));
        for spec in admissible_parameters(q, &[Family::Cyclic, Family::Constacyclic]) {
            let b = build_default(spec).unwrap();
            let g = b.block.generator_poly.clone().unwrap();
            let m = b.block.modulus_poly.clone().unwrap();
            assert_eq!(g.len(), spec.n - spec.k + 1);
            assert_eq!(m.len(), spec.n + 1);
            assert!(g.iter().chain(&m).all(|&c| c < q));
        }
        let tau = 2usize;
        let beta = e.beta();
        let roots: Vec<u32> = (-(tau as i64)..=tau as i64).map(|j| e.pow(beta, j).unwrap()).collect();
        assert!(base_field_closure_check(&e, &roots).unwrap());
        assert!(!base_field_closure_check(&e, &roots[1..]).unwrap());
    }
}

#[test]
fn expected_verdict_table() {
    let e = FamilySpec::rs(8, 7, 3, 1).expected();
    assert!(e.mds && e.smds && e.mdp);
    let e = FamilySpec::rs(8, 7, 3, 2).expected();
    assert!(e.mds && !e.smds && !e.mdp);
    let e = FamilySpec::grs(8, 2, 3).expected();
    assert!(e.mds && !e.smds && !e.mdp);
    let e = FamilySpec::cyclic(9, 1, 1).expected();
    assert!(e.mds && e.smds && e.mdp);
    let e = FamilySpec::cyclic(9, 7, 1).expected();
    assert!(!e.mds && !e.smds && !e.mdp);
    let e = FamilySpec::cyclic_parity(8, 2).expected();
    assert!(e.mds && !e.smds && !e.mdp);
}

#[test]
fn derived_parameters() {
    assert_eq!(FamilySpec::rs(8, 7, 2, 2).gamma(), Some(3));
    let c = FamilySpec::cyclic(9, 3, 1);
    assert_eq!((c.tau(), c.gamma(), c.conv_params()), (Some(3), Some(3), (10, 5, 2)));
    let c = FamilySpec::constacyclic(9, 2, 1);
    assert_eq!((c.tau(), c.gamma(), c.conv_params()), (Some(3), Some(3), (10, 4, 2)));
    let c = FamilySpec::cyclic_parity(8, 3);
    assert_eq!((c.r_s(), c.conv_params(), c.k), (Some((2, 2)), (9, 5, 3), 2));
    assert_eq!(FamilySpec::cyclic_parity(8, 2).r_s(), Some((2, 1)));
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(matches!(FamilySpec::grs(8, 7, 1).validate(), Err(Error::InvalidParams(_))));
    assert!(matches!(FamilySpec::rs(8, 8, 3, 1).validate(), Err(Error::InvalidParams(_))));
    assert_eq!(FamilySpec::cyclic(9, 2, 1).validate(), Err(Error::ParityConditionViolated { expected: "q" }));
    assert_eq!(FamilySpec::constacyclic(9, 2, 1).validate(), Ok(()));
    assert_eq!(FamilySpec::constacyclic(9, 3, 1).validate(), Err(Error::ParityConditionViolated { expected: "q + 1" }));
    assert_eq!(FamilySpec::cyclic_parity(9, 2).validate(), Err(Error::OddFieldSize(9)));
    assert!(FamilySpec::cyclic_parity(8, 4).validate().is_err());
    assert!(FamilySpec::cyclic(4, 1, 1).validate().is_err());
    assert!(FamilySpec::grs(6, 2, 1).validate().is_err());
    assert!(build_default(FamilySpec::grs(8, 7, 1)).is_err());
}

#[test]
fn extension_override_changes_matrices_not_parameters() {
    let f = Field::of_order(8).unwrap();
    let spec = FamilySpec::cyclic(8, 4, 1);
    let a = build_default(spec).unwrap();
    let setup = FieldSetup::with_ext(f, Some((1, 2)), Some(44)).unwrap();
    let b = umconv::constructions::build(spec, &setup).unwrap();
    assert_eq!((a.desc.n, a.desc.k, a.desc.delta), (b.desc.n, b.desc.k, b.desc.delta));
    assert_eq!(setup.ext.as_ref().unwrap().beta(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn bundle_json_round_trip(spec in prop::sample::select(all_specs())) {
        let b = build_default(spec).unwrap();
        let v: serde_json::Value = serde_json::from_str(&b.to_json().to_string()).unwrap();
        let (desc, expected) = desc_from_bundle(&v).unwrap();
        prop_assert_eq!(desc, b.desc);
        prop_assert_eq!(expected, Some(b.expected));
    }
}
