use esnlab::double::{
    dig_from_dis, ix_g_disagreements, roundtrip_dig, roundtrip_dis, validate_dig, verify_interchange_proof, IxReading,
};
use esnlab::esn::roundtrip_is;
use esnlab::inverse::{analyze_inverse, check_regular_inverse_equivalence};
use esnlab::presheaf::{compose, decompose};
use esnlab::search::{enumerate_tables, search_double_pairs, PairClass, SemigroupClass};

#[test]
fn esn_roundtrip_on_inverse_semigroups() {
    for n in 1..=4 {
        for t in enumerate_tables(n, SemigroupClass::Inverse).unwrap() {
            assert!(roundtrip_is(&t).unwrap().holds(), "{}", t.to_cay());
        }
    }
}

#[test]
fn regular_inverse_equivalence_on_all_semigroups() {
    for n in 1..=4 {
        for t in enumerate_tables(n, SemigroupClass::All).unwrap() {
            let r = check_regular_inverse_equivalence(&t).unwrap();
            assert_eq!(r.is_inverse, analyze_inverse(&t).is_ok());
        }
    }
}

#[test]
fn double_pipeline_on_small_pairs() {
    for n in 1..=3 {
        for d in search_double_pairs(n, PairClass::Inverse).unwrap() {
            let name = d.to_cay();
            assert!(roundtrip_dis(&d).unwrap().holds(), "{name}");
            let g = dig_from_dis(&d).unwrap();
            assert!(roundtrip_dig(&g).unwrap().holds(), "{name}");
            assert!(validate_dig(&g, IxReading::Literal).is_valid(), "{name}");
            assert_eq!(ix_g_disagreements(&g), 0, "{name}");
            assert!(verify_interchange_proof(&g).unwrap().is_valid(), "{name}");
            let x = decompose(&d).unwrap();
            assert!(x.report.improper && x.report.commutative && x.report.clifford);
            assert_eq!(compose(&x.presheaf).unwrap(), d, "{name}");
        }
    }
}
