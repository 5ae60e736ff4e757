use std::path::{Path, PathBuf};

use esnlab::double::{
    dig_from_dis, is_double_inverse_semigroup, is_double_semigroup, is_proper, roundtrip_dig, roundtrip_dis,
    validate_dig, verify_interchange_proof, DigDocument, DoubleInductiveGroupoid, DoubleSemigroup, IxReading,
};
use esnlab::esn::{is_from_ig, roundtrip_ig, roundtrip_is, validate_ig, GroupoidDocument};
use esnlab::inverse::analyze_inverse;
use esnlab::presheaf::{compose, decompose, AbelianGroupPresheaf, PresheafDocument};
use esnlab::search::{enumerate_semigroups, search_double, PairClass, SemigroupClass};
use esnlab::tables::parse_table;
use esnlab::{CayleyTable, ElementId, Error};

use crate::report::{CliResult, InputError, Report};

struct Suite {
    dir: PathBuf,
    report: Report,
}

fn holds<T>(r: Result<esnlab::Verdict<T>, Error>) -> bool {
    matches!(r, Ok(v) if v.holds())
}

impl Suite {
    fn text(&mut self, name: &str) -> CliResult<String> {
        let path: PathBuf = self.dir.join(name);
        self.report.read(&path)
    }

    fn bad(name: &str, e: impl std::fmt::Display) -> InputError {
        InputError(format!("fixture {name}: {e}"))
    }

    fn table(&mut self, name: &str) -> CliResult<CayleyTable> {
        let t = self.text(name)?;
        parse_table(&t).map_err(|e| Self::bad(name, e))
    }

    fn pair(&mut self, name: &str) -> CliResult<DoubleSemigroup> {
        let t = self.text(name)?;
        DoubleSemigroup::parse(&t).map_err(|e| Self::bad(name, e))
    }

    fn groupoid_doc(&mut self, name: &str) -> CliResult<GroupoidDocument> {
        let t = self.text(name)?;
        GroupoidDocument::from_json(&t).map_err(|e| Self::bad(name, e))
    }

    fn dig(&mut self, name: &str) -> CliResult<DoubleInductiveGroupoid> {
        let t = self.text(name)?;
        DigDocument::from_json(&t).and_then(|d| d.to_dig()).map_err(|e| Self::bad(name, e))
    }

    fn presheaf(&mut self, name: &str) -> CliResult<AbelianGroupPresheaf> {
        let t = self.text(name)?;
        PresheafDocument::from_json(&t).and_then(|d| d.to_presheaf()).map_err(|e| Self::bad(name, e))
    }

    fn check(&mut self, fixture: &str, name: &str, passed: bool, witness: impl FnOnce() -> String) -> bool {
        self.report.check(&format!("{fixture}.{name}"), passed, witness)
    }
}

fn ids(xs: &[usize]) -> Vec<ElementId> {
    xs.iter().map(|&x| ElementId::from_label(x).unwrap()).collect()
}

fn show<T: std::fmt::Debug>(x: T) -> String {
    format!("got {x:?}")
}

fn brandt(s: &mut Suite) -> CliResult<CayleyTable> {
    const F: &str = "b2_5_415.cay";
    let t = s.table(F)?;
    match analyze_inverse(&t) {
        Err(e) => {
            s.check(F, "inverse", false, || e.to_string());
        }
        Ok(an) => {
            s.check(F, "inverse", true, String::new);
            let doc = an.to_document();
            s.check(F, "idempotents", doc.idempotents == ids(&[1, 4, 5]), || show(&doc.idempotents));
            s.check(F, "inverses", doc.inverse_map == ids(&[1, 3, 2, 4, 5]), || show(&doc.inverse_map));
            let arrows: Vec<(usize, usize, usize)> = t
                .elements()
                .filter(|&x| !an.is_idempotent(x))
                .map(|x| (x.label(), an.domain(x).label(), an.codomain(x).label()))
                .collect();
            s.check(F, "arrows", arrows == [(2, 4, 5), (3, 5, 4)], || show(&arrows));
            let hasse: Vec<[usize; 2]> = doc.hasse.iter().map(|[a, b]| [a.label(), b.label()]).collect();
            s.check(F, "hasse", hasse == [[1, 4], [1, 5]], || show(&hasse));
            let (e4, e5) = (ElementId::from_label(4).unwrap(), ElementId::from_label(5).unwrap());
            s.check(F, "incomparable", !an.leq(e4, e5) && !an.leq(e5, e4), || "4 and 5 are comparable".into());
            let m = an.idempotent_meet(e4, e5).map(|m| m.label()).ok();
            s.check(F, "meet", m == Some(1), || show(m));
        }
    }
    s.check(F, "noncommutative", !t.is_commutative().holds(), || "table is commutative".into());
    s.check(F, "esn_roundtrip", holds(roundtrip_is(&t)), || "roundtrip differs".into());
    Ok(t)
}

fn uniqueness(s: &mut Suite, b2: &CayleyTable) -> CliResult<()> {
    const F: &str = "b2_5_415.cay";
    let r = enumerate_semigroups(5, SemigroupClass::NonCommutativeInverse)?;
    s.check(F, "unique_noncommutative_class", r.class_count == 1, || show(r.class_count));
    let canon = b2.canonical_form().to_cay();
    s.check(F, "canonical_match", r.representatives == [canon], || show(&r.representatives));
    Ok(())
}

fn partial_bijections(s: &mut Suite) -> CliResult<()> {
    const F: &str = "i2_groupoid.json";
    let doc = s.groupoid_doc(F)?;
    let g = doc.to_groupoid().map_err(|e| Suite::bad(F, e))?;
    let v = validate_ig(&g);
    s.check(F, "inductive", v.is_valid(), || v.summary());
    match is_from_ig(&g) {
        Ok(t) => {
            s.check(F, "order", t.order() == 7, || show(t.order()));
            s.check(F, "inverse", analyze_inverse(&t).is_ok(), || "not an inverse semigroup".into());
        }
        Err(e) => {
            s.check(F, "semigroup", false, || e.to_string());
        }
    }
    s.check(F, "roundtrip", holds(roundtrip_ig(&g)), || "roundtrip differs".into());

    const L: &str = "i2_literal_groupoid.json";
    let doc = s.groupoid_doc(L)?;
    let rejected = match doc.to_groupoid() {
        Err(_) => true,
        Ok(g) => !validate_ig(&g).is_valid(),
    };
    s.check(L, "rejected", rejected, || "accepted as inductive".into());
    Ok(())
}

fn projections(s: &mut Suite) -> CliResult<()> {
    const F: &str = "projections_pair.cay";
    let d = s.pair(F)?;
    let v = is_double_semigroup(&d);
    s.check(F, "double", v.holds(), || v.witness().unwrap().to_string());
    s.check(F, "proper", is_proper(&d), || "operations coincide".into());
    let v = is_double_inverse_semigroup(&d);
    s.check(F, "not_double_inverse", !v.holds(), || "accepted as double inverse".into());
    let r = search_double(2, PairClass::Semigroup)?;
    let canon = d.canonical_form().to_cay();
    let found = r.representatives.contains(&canon);
    s.check(F, "found_by_search", found, || "no matching class at order 2".into());
    Ok(())
}

fn z2(s: &mut Suite) -> CliResult<()> {
    const F: &str = "z2_pair.cay";
    let d = s.pair(F)?;
    let v = is_double_inverse_semigroup(&d);
    if !s.check(F, "double_inverse", v.holds(), || v.witness().unwrap().to_string()) {
        return Ok(());
    }
    s.check(F, "roundtrip_dis", holds(roundtrip_dis(&d)), || "roundtrip differs".into());
    match dig_from_dis(&d) {
        Ok(g) => {
            s.check(F, "one_object", g.object_count() == 1, || show(g.object_count()));
            s.check(F, "roundtrip_dig", holds(roundtrip_dig(&g)), || "roundtrip differs".into());
        }
        Err(e) => {
            s.check(F, "dig", false, || e.to_string());
        }
    }
    match decompose(&d) {
        Ok(x) => {
            let p = &x.presheaf;
            let ok = p.base().len() == 1 && p.group(0).order() == 2;
            s.check(F, "one_point_presheaf", ok, || show((p.base().len(), p.total_size())));
            s.check(F, "compose_roundtrip", compose(p).ok() == Some(d.clone()), || "compose differs".into());
        }
        Err(e) => {
            s.check(F, "decompose", false, || e.to_string());
        }
    }
    Ok(())
}

fn clifford(s: &mut Suite) -> CliResult<()> {
    const F: &str = "clifford3_pair.cay";
    const P: &str = "clifford3_presheaf.json";
    let d = s.pair(F)?;
    let p = s.presheaf(P)?;
    let v = is_double_inverse_semigroup(&d);
    if !s.check(F, "double_inverse", v.holds(), || v.witness().unwrap().to_string()) {
        return Ok(());
    }
    match dig_from_dis(&d) {
        Ok(g) => {
            let v = validate_dig(&g, IxReading::Corrected);
            s.check(F, "axioms", v.is_valid(), || v.summary());
            match verify_interchange_proof(&g) {
                Ok(r) => s.check(F, "interchange_proof", r.is_valid(), || r.summary()),
                Err(e) => s.check(F, "interchange_proof", false, || e.to_string()),
            };
        }
        Err(e) => {
            s.check(F, "dig", false, || e.to_string());
        }
    }
    match decompose(&d) {
        Ok(x) => {
            let m = &x.report;
            let ok = m.improper && m.commutative && m.clifford;
            s.check(F, "improper_commutative_clifford", ok, || show(m));
            s.check(F, "decompose_matches_presheaf", x.presheaf == p, || "presheaf differs".into());
            s.check(F, "compose_roundtrip", compose(&x.presheaf).ok() == Some(d.clone()), || "compose differs".into());
        }
        Err(e) => {
            s.check(F, "decompose", false, || e.to_string());
        }
    }
    match compose(&p) {
        Ok(c) => s.check(P, "compose", c == d, || format!("got\n{}", c.to_cay())),
        Err(e) => s.check(P, "compose", false, || e.to_string()),
    };
    Ok(())
}

fn mutated(s: &mut Suite) -> CliResult<()> {
    const F: &str = "chain3_mutated_dig.json";
    let g = s.dig(F)?;
    let v = validate_dig(&g, IxReading::Corrected);
    let tagged = v.iter().any(|(name, t)| (name == "vii" || name.starts_with("viii")) && t.violations > 0);
    s.check(F, "rejected_by_meet_axioms", tagged, || "no violation of vii or viii".into());
    Ok(())
}

fn nonassociative(s: &mut Suite) -> CliResult<()> {
    const F: &str = "nonassociative.cay";
    let t = s.table(F)?;
    let w = t.is_associative().witness().map(|(a, b, c)| (a.label(), b.label(), c.label()));
    s.check(F, "rejected", w == Some((1, 1, 2)), || show(w));
    Ok(())
}

fn main_theorem(s: &mut Suite) -> CliResult<()> {
    for n in 1..=4 {
        let r = search_double(n, PairClass::Inverse)?;
        let proper = r.proper_labeled.unwrap_or(0);
        s.report.check(&format!("search.inverse_pairs_{n}"), r.labeled_count > 0 && proper == 0 && r.claims_hold(), || {
            format!("{} pairs, {proper} proper", r.labeled_count)
        });
    }
    Ok(())
}

/// Replays every bundled fixture; unreadable fixtures are input errors.
pub fn run(dir: PathBuf) -> CliResult<Report> {
    if !Path::new(&dir).is_dir() {
        return Err(InputError(format!("{}: not a fixture directory", dir.display())));
    }
    let mut s = Suite { dir, report: Report::new("fixture-suite") };
    let b2 = brandt(&mut s)?;
    partial_bijections(&mut s)?;
    projections(&mut s)?;
    z2(&mut s)?;
    clifford(&mut s)?;
    mutated(&mut s)?;
    nonassociative(&mut s)?;
    main_theorem(&mut s)?;
    uniqueness(&mut s, &b2)?;
    Ok(s.report)
}
