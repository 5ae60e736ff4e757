//! One PASS/FAIL line per acceptance criterion, each under its time limit.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use esnlab::double::{
    dig_from_dis, dis_from_dig, roundtrip_dig, validate_dig, verify_interchange_proof, DoubleSemigroup, IxReading,
    COMPATIBILITY_FAMILIES,
};
use esnlab::esn::roundtrip_is;
use esnlab::inverse::analyze_inverse;
use esnlab::presheaf::{
    component_groups, compose, decompose, dig_from_presheaf, fixtures, orders_coincide_on_objects,
    shared_idempotents_coincide, AbelianGroupPresheaf, PresheafDocument,
};
use esnlab::search::{enumerate_semigroups, enumerate_tables, search_double, search_double_pairs, PairClass, SemigroupClass};
use esnlab::tables::parse_table;
use esnlab::{CayleyTable, ElementId};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap()
}

fn b2() -> CayleyTable {
    parse_table(&read("b2_5_415.cay")).unwrap()
}

fn e(label: usize) -> ElementId {
    ElementId::from_label(label).unwrap()
}

fn inverse_pairs() -> Vec<DoubleSemigroup> {
    (1..=4).flat_map(|n| search_double_pairs(n, PairClass::Inverse).unwrap()).collect()
}

/// Runs a criterion, prints its verdict line and returns whether it passed.
fn criterion(n: u32, what: &str, limit: Duration, body: impl FnOnce() -> Result<(), String>) -> bool {
    let start = Instant::now();
    let outcome = body();
    let took = start.elapsed();
    let outcome = outcome.and_then(|()| {
        if took <= limit {
            Ok(())
        } else {
            Err(format!("took {took:?}, limit {limit:?}"))
        }
    });
    let line = match &outcome {
        Ok(()) => format!("PASS criterion {n}: {what} ({} ms, limit {} s)", took.as_millis(), limit.as_secs()),
        Err(w) => format!("FAIL criterion {n}: {what} ({} ms, limit {} s): {w}", took.as_millis(), limit.as_secs()),
    };
    let _ = writeln!(std::io::stderr(), "{line}");
    outcome.is_ok()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_fixture() -> Result<(), String> {
    let t = b2();
    let a = analyze_inverse(&t).map_err(|e| e.to_string())?;
    let idem: Vec<usize> = a.idempotents().iter().map(|x| x.label()).collect();
    ensure(idem == [1, 4, 5], || format!("E(S) = {idem:?}"))?;
    let inv: Vec<usize> = t.elements().map(|x| a.inverse(x).label()).collect();
    ensure(inv == [1, 3, 2, 4, 5], || format!("inverses {inv:?}"))?;
    let arrows: Vec<(usize, usize, usize)> =
        [2, 3].iter().map(|&x| (x, a.domain(e(x)).label(), a.codomain(e(x)).label())).collect();
    ensure(arrows == [(2, 4, 5), (3, 5, 4)], || format!("dom/cod {arrows:?}"))?;
    let hasse: Vec<[usize; 2]> = a.to_document().hasse.iter().map(|[x, y]| [x.label(), y.label()]).collect();
    ensure(hasse == [[1, 4], [1, 5]], || format!("hasse {hasse:?}"))?;
    ensure(!a.leq(e(4), e(5)) && !a.leq(e(5), e(4)), || "4 and 5 comparable".into())?;
    let m = a.idempotent_meet(e(4), e(5)).map_err(|x| x.to_string())?;
    ensure(m == e(1), || format!("meet(4,5) = {m}"))
}

fn esn_roundtrip() -> Result<(), String> {
    let mut tables = vec![b2()];
    for n in 1..=4 {
        tables.extend(enumerate_tables(n, SemigroupClass::Inverse).map_err(|e| e.to_string())?);
    }
    for t in &tables {
        let v = roundtrip_is(t).map_err(|e| e.to_string())?;
        ensure(v.holds(), || format!("roundtrip differs on\n{}", t.to_cay()))?;
    }
    ensure(tables.len() == 1 + 1 + 4 + 24 + 272, || format!("{} tables", tables.len()))
}

fn uniqueness() -> Result<(), String> {
    let r = enumerate_semigroups(5, SemigroupClass::NonCommutativeInverse).map_err(|e| e.to_string())?;
    ensure(r.class_count == 1, || format!("{} classes", r.class_count))?;
    let canon = b2().canonical_form().to_cay();
    ensure(r.representatives == [canon], || format!("representatives {:?}", r.representatives))
}

fn main_theorem() -> Result<(), String> {
    for n in 1..=4 {
        let r = search_double(n, PairClass::Inverse).map_err(|e| e.to_string())?;
        ensure(r.labeled_count >= 1, || format!("no pairs at order {n}"))?;
        ensure(r.proper_labeled == Some(0), || format!("proper pairs at order {n}: {:?}", r.proper_labeled))?;
        for d in search_double_pairs(n, PairClass::Inverse).map_err(|e| e.to_string())? {
            let commutative = d.hop().is_commutative().holds() && d.vop().is_commutative().holds();
            let clifford = analyze_inverse(d.hop()).is_ok_and(|a| a.is_clifford().holds());
            ensure(commutative && clifford, || format!("pair not commutative Clifford:\n{}", d.to_cay()))?;
        }
    }
    Ok(())
}

fn proper_pairs_exist() -> Result<(), String> {
    let r = search_double(2, PairClass::Semigroup).map_err(|e| e.to_string())?;
    ensure(r.proper_labeled.unwrap_or(0) >= 1, || "no proper pair".into())?;
    let projections = DoubleSemigroup::parse(&read("projections_pair.cay")).map_err(|e| e.to_string())?;
    let canon = projections.canonical_form().to_cay();
    ensure(r.representatives.contains(&canon), || "projection pair not among the classes".into())
}

fn double_roundtrips(pairs: &[DoubleSemigroup]) -> Result<(), String> {
    for d in pairs {
        let g = dig_from_dis(d).map_err(|e| e.to_string())?;
        let back = dis_from_dig(&g).map_err(|e| e.to_string())?;
        ensure(&back == d, || format!("dis roundtrip differs on\n{}", d.to_cay()))?;
        let v = roundtrip_dig(&g).map_err(|e| e.to_string())?;
        ensure(v.holds(), || format!("dig roundtrip differs on\n{}", d.to_cay()))?;
    }
    Ok(())
}

fn axiom_checks(pairs: &[DoubleSemigroup]) -> Result<(), String> {
    for d in pairs {
        let g = dig_from_dis(d).map_err(|e| e.to_string())?;
        let r = validate_dig(&g, IxReading::Corrected);
        ensure(r.is_valid(), || format!("{} on\n{}", r.summary(), d.to_cay()))?;
        let r = verify_interchange_proof(&g).map_err(|e| e.to_string())?;
        ensure(r.is_valid(), || format!("{} on\n{}", r.summary(), d.to_cay()))?;
    }
    let clifford = DoubleSemigroup::parse(&read("clifford3_pair.cay")).map_err(|e| e.to_string())?;
    let candidates = [
        dig_from_dis(&clifford).map_err(|e| e.to_string())?,
        dig_from_presheaf(&fixtures::diamond()).map_err(|e| e.to_string())?,
    ];
    let exercised = candidates.iter().any(|g| {
        let r = validate_dig(g, IxReading::Corrected);
        g.object_count() >= 2 && COMPATIBILITY_FAMILIES.iter().all(|f| r.substantive_with_prefix(f) > 0)
    });
    ensure(exercised, || "no fixture exercises every axiom family".into())
}

fn same_up_to_labels(p: &AbelianGroupPresheaf, q: &AbelianGroupPresheaf) -> bool {
    let n = p.base().len();
    n == q.base().len()
        && (0..n).all(|a| (0..n).all(|b| p.base().leq(a, b) == q.base().leq(a, b) && p.base().meet(a, b) == q.base().meet(a, b)))
        && p.homs() == q.homs()
        && p.groups().iter().zip(q.groups()).all(|(g, h)| g.op() == h.op())
}

fn presheaf_pipeline(pairs: &[DoubleSemigroup]) -> Result<(), String> {
    for d in pairs {
        let name = || d.to_cay();
        shared_idempotents_coincide(d).map_err(|e| format!("{e} on\n{}", name()))?;
        let g = dig_from_dis(d).map_err(|e| e.to_string())?;
        orders_coincide_on_objects(&g).map_err(|e| format!("{e} on\n{}", name()))?;
        let comps = component_groups(&g).map_err(|e| format!("{e} on\n{}", name()))?;
        ensure(comps.len() == g.object_count(), || format!("component count on\n{}", name()))?;
        let x = decompose(d).map_err(|e| format!("{e} on\n{}", name()))?;
        let back = compose(&x.presheaf).map_err(|e| e.to_string())?;
        ensure(&back == d, || format!("compose(decompose(d)) differs on\n{}", name()))?;
    }
    let bundled = PresheafDocument::from_json(&read("clifford3_presheaf.json"))
        .and_then(|doc| doc.to_presheaf())
        .map_err(|e| e.to_string())?;
    let again = decompose(&compose(&bundled).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.presheaf;
    ensure(again == bundled, || "decompose(compose(p)) differs on the bundled presheaf".into())?;
    for p in [fixtures::point(3), fixtures::collapsing_chain(), fixtures::diamond()] {
        let again = decompose(&compose(&p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?.presheaf;
        ensure(same_up_to_labels(&p, &again), || "decompose(compose(p)) differs".into())?;
    }
    Ok(())
}

/// Every table over `0..n` by direct enumeration of all `n^(n^2)` tables.
fn naive_scan(n: usize, keep: impl Fn(&CayleyTable) -> bool) -> (u64, BTreeSet<String>) {
    let total = n.pow((n * n) as u32);
    let mut labeled = 0;
    let mut classes = BTreeSet::new();
    for mut code in 0..total {
        let mut cells = Vec::with_capacity(n * n);
        for _ in 0..n * n {
            cells.push(code % n);
            code /= n;
        }
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| cells[cells[a * n + b] * n + c] == cells[a * n + cells[b * n + c]])));
        if !assoc {
            continue;
        }
        let t = CayleyTable::from_fn(n, |a, b| ElementId::from_index(cells[a.index() * n + b.index()]));
        if keep(&t) {
            labeled += 1;
            classes.insert(t.canonical_form().to_cay());
        }
    }
    (labeled, classes)
}

fn is_inverse_naive(t: &CayleyTable) -> bool {
    t.elements().all(|a| {
        t.elements()
            .filter(|&x| t.product(t.product(a, x), a) == a && t.product(t.product(x, a), x) == x)
            .count()
            == 1
    })
}

fn oracle_equivalence() -> Result<(), String> {
    for n in 1..=3 {
        for class in [SemigroupClass::All, SemigroupClass::Inverse, SemigroupClass::CommutativeInverse] {
            let (labeled, classes) = naive_scan(n, |t| match class {
                SemigroupClass::All => true,
                SemigroupClass::Inverse => is_inverse_naive(t),
                _ => is_inverse_naive(t) && t.is_commutative().holds(),
            });
            let r = enumerate_semigroups(n, class).map_err(|e| e.to_string())?;
            ensure(r.labeled_count == labeled, || format!("order {n} {}: {} vs {labeled}", class.name(), r.labeled_count))?;
            let found: BTreeSet<String> = r.representatives.iter().cloned().collect();
            ensure(found == classes && r.class_count == classes.len(), || format!("order {n} {}: class sets differ", class.name()))?;
        }
    }
    Ok(())
}

fn without_timing(bytes: &[u8]) -> Result<serde_json::Value, String> {
    let mut v: serde_json::Value = serde_json::from_slice(bytes).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("timing");
    Ok(v)
}

fn determinism() -> Result<(), String> {
    let commands: [&[&str]; 3] = [
        &["search", "--order", "4", "--class", "semigroup", "--pairs"],
        &["search", "--order", "4", "--class", "all"],
        &["fixture-suite"],
    ];
    for args in commands {
        let mut outputs = Vec::new();
        for jobs in ["1", "8", "1", "8"] {
            let o = Command::new(env!("CARGO_BIN_EXE_esnlab"))
                .args(["--format", "json", "--jobs", jobs])
                .args(args)
                .output()
                .map_err(|e| e.to_string())?;
            ensure(o.status.success(), || format!("{args:?} --jobs {jobs} exited {:?}", o.status.code()))?;
            outputs.push(without_timing(&o.stdout)?);
        }
        let first = serde_json::to_vec(&outputs[0]).unwrap();
        for (i, other) in outputs.iter().enumerate().skip(1) {
            ensure(serde_json::to_vec(other).unwrap() == first, || format!("{args:?}: run {i} differs from run 0"))?;
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let pairs = inverse_pairs();
    let results = [
        criterion(1, "golden fixture for the five-element Brandt semigroup", secs(1), golden_fixture),
        criterion(2, "inductive groupoid round trip on inverse semigroups up to order 4", secs(60), esn_roundtrip),
        criterion(3, "unique non-commutative inverse class at order 5", secs(600), uniqueness),
        criterion(4, "no proper double inverse semigroups up to order 4", secs(600), main_theorem),
        criterion(5, "proper double semigroups at order 2 include the projections", secs(60), proper_pairs_exist),
        criterion(6, "double round trips up to order 4", secs(300), || double_roundtrips(&pairs)),
        criterion(7, "compatibility axioms and interchange derivation", secs(300), || axiom_checks(&pairs)),
        criterion(8, "presheaf decomposition pipeline", secs(300), || presheaf_pipeline(&pairs)),
        criterion(9, "enumeration matches the naive scan up to order 3", secs(60), oracle_equivalence),
        criterion(10, "reports identical across job counts", secs(600), determinism),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
