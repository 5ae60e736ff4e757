use std::path::Path;

use serde_json::json;

use esnlab::axioms::AxiomReport;
use esnlab::double::{
    dig_from_dis, dis_from_dig, is_double_inverse_semigroup, is_double_semigroup, is_proper, roundtrip_dig,
    roundtrip_dis, validate_dig, verify_interchange_proof, DigDocument, DoubleInductiveGroupoid, DoubleSemigroup,
    IxReading,
};
use esnlab::esn::{ig_from_is, is_from_ig, roundtrip_ig, roundtrip_is, validate_ig, GroupoidDocument};
use esnlab::inverse::analyze_inverse;
use esnlab::presheaf::{self, PresheafDocument};
use esnlab::search::{enumerate_semigroups, search_double, PairClass, SearchReport, SemigroupClass};
use esnlab::tables::parse_table;
use esnlab::{CayleyTable, Verdict};

use crate::report::{failure, Artifact, CliResult, InputError, Report};
use crate::{CheckArgs, DoubleCommand, EsnCommand, PairArgs, SearchArgs};

fn usage(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

fn load_table(r: &mut Report, path: &Path) -> CliResult<CayleyTable> {
    let text = r.read(path)?;
    parse_table(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_pair(r: &mut Report, a: &PairArgs) -> CliResult<DoubleSemigroup> {
    match (&a.path, &a.hop, &a.vop) {
        (Some(p), None, None) => {
            let text = r.read(p)?;
            DoubleSemigroup::parse(&text).map_err(|e| usage(format!("{}: {e}", p.display())))
        }
        (None, Some(h), Some(v)) => {
            let (h, v) = (load_table(r, h)?, load_table(r, v)?);
            Ok(DoubleSemigroup::new(h, v)?)
        }
        _ => Err(usage("give a file with two tables, or --hop and --vop")),
    }
}

fn is_json(a: &PairArgs) -> bool {
    a.path.as_ref().is_some_and(|p| p.extension().is_some_and(|e| e == "json"))
}

fn load_dig(r: &mut Report, path: &Path) -> CliResult<DoubleInductiveGroupoid> {
    let text = r.read(path)?;
    let doc = DigDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    Ok(doc.to_dig()?)
}

fn load_groupoid_doc(r: &mut Report, path: &Path) -> CliResult<GroupoidDocument> {
    let text = r.read(path)?;
    GroupoidDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn labels<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

/// Runs the selected predicates; with no selection, associativity for one
/// table and the double semigroup laws for a pair.
pub fn check(a: &CheckArgs) -> CliResult<Report> {
    let mut r = Report::new("check");
    let single = a.semigroup || a.inverse || a.commutative || a.clifford;
    let pair = a.double || a.double_inverse;
    if single && pair {
        return Err(usage("single-table and pair checks cannot be mixed"));
    }
    let pair_input = a.input.hop.is_some();
    if pair || pair_input {
        let d = load_pair(&mut r, &a.input)?;
        if a.double || !a.double_inverse {
            let v = is_double_semigroup(&d);
            r.check("double", v.holds(), || v.witness().unwrap().to_string());
        }
        if a.double_inverse {
            let v = is_double_inverse_semigroup(&d);
            r.check("double_inverse", v.holds(), || v.witness().unwrap().to_string());
        }
        r.result = json!({ "order": d.order(), "proper": is_proper(&d) });
        r.note(format!("proper: {}", is_proper(&d)));
        return Ok(r);
    }
    let path = a.input.path.as_ref().ok_or_else(|| usage("no input file"))?;
    let t = load_table(&mut r, path)?;
    let assoc = t.is_associative();
    if a.semigroup || !single {
        r.check("semigroup", assoc.holds(), || {
            let (x, y, z) = assoc.witness().unwrap();
            format!("({x}*{y})*{z} != {x}*({y}*{z})")
        });
    }
    if a.commutative {
        let c = t.is_commutative();
        r.check("commutative", c.holds(), || {
            let (x, y) = c.witness().unwrap();
            format!("{x}*{y} != {y}*{x}")
        });
    }
    if a.inverse || a.clifford {
        match analyze_inverse(&t) {
            Err(e) => {
                let w = failure(e)?;
                r.fail("inverse", w);
            }
            Ok(an) => {
                if a.inverse {
                    r.pass("inverse");
                }
                if a.clifford {
                    let c = an.is_clifford();
                    r.check("clifford", c.holds(), || format!("{0}*{0}^-1 != {0}^-1*{0}", c.witness().unwrap()));
                }
                let doc = an.to_document();
                r.note(format!("idempotents: {{{}}}", labels(&doc.idempotents)));
                let inv: Vec<String> = t.elements().map(|x| format!("{x}<->{}", an.inverse(x))).collect();
                r.note(format!("inverses: {}", inv.join(" ")));
                let arrows: Vec<String> = t
                    .elements()
                    .filter(|&x| !an.is_idempotent(x))
                    .map(|x| format!("{x}: {}->{}", an.domain(x), an.codomain(x)))
                    .collect();
                r.note(format!("arrows: {}", arrows.join(" ")));
                let hasse: Vec<String> = doc.hasse.iter().map(|[x, y]| format!("({x},{y})")).collect();
                r.note(format!("hasse: {}", hasse.join(" ")));
                r.dot = Some(an.hasse_dot());
                r.result = serde_json::to_value(&doc).expect("documents serialize");
            }
        }
    }
    Ok(r)
}

pub fn esn(c: &EsnCommand) -> CliResult<Report> {
    match c {
        EsnCommand::ToGroupoid { path, roundtrip } => {
            let mut r = Report::new("esn to-groupoid");
            let t = load_table(&mut r, path)?;
            let an = match analyze_inverse(&t) {
                Ok(an) => an,
                Err(e) => {
                    let w = failure(e)?;
                    r.fail("inverse", w);
                    return Ok(r);
                }
            };
            r.pass("inverse");
            let g = ig_from_is(&an);
            let v = validate_ig(&g);
            r.check("inductive_groupoid", v.is_valid(), || v.summary());
            if *roundtrip {
                match roundtrip_is(&t) {
                    Ok(Verdict::Holds) => r.pass("roundtrip"),
                    Ok(Verdict::Fails((a, b))) => r.fail("roundtrip", format!("product of {a} and {b} differs")),
                    Err(e) => r.fail("roundtrip", failure(e)?),
                }
            }
            r.dot = Some(g.to_dot());
            r.artifact = Some(Artifact::Json(g.to_document().to_json()));
            Ok(r)
        }
        EsnCommand::ToSemigroup { path, roundtrip } => {
            let mut r = Report::new("esn to-semigroup");
            let doc = load_groupoid_doc(&mut r, path)?;
            let g = doc.to_groupoid()?;
            let v = validate_ig(&g);
            if !r.check("inductive_groupoid", v.is_valid(), || v.summary()) {
                r.result = serde_json::to_value(&v).expect("reports serialize");
                return Ok(r);
            }
            match is_from_ig(&g) {
                Ok(t) => {
                    r.pass("inverse_semigroup");
                    r.result = json!({ "order": t.order(), "arrows": g.arrow_labels });
                    r.note(format!("order: {}", t.order()));
                    r.artifact = Some(Artifact::Text(t.to_cay()));
                }
                Err(e) => r.fail("inverse_semigroup", failure(e)?),
            }
            if *roundtrip {
                match roundtrip_ig(&g) {
                    Ok(Verdict::Holds) => r.pass("roundtrip"),
                    Ok(Verdict::Fails(w)) => r.fail("roundtrip", w),
                    Err(e) => r.fail("roundtrip", failure(e)?),
                }
            }
            Ok(r)
        }
    }
}

fn axiom_checks(r: &mut Report, report: &AxiomReport) {
    for (name, t) in report.iter() {
        r.check(name, t.violations == 0, || {
            let w = &t.witnesses[0];
            format!("{} violation(s), first at ({}): {}", t.violations, w.tuple.join(", "), w.detail)
        });
    }
    r.result = serde_json::to_value(report).expect("reports serialize");
}

/// A double groupoid from a `.json` document, or built from a pair.
fn load_structure(r: &mut Report, a: &PairArgs) -> CliResult<Option<DoubleInductiveGroupoid>> {
    if is_json(a) {
        return load_dig(r, a.path.as_ref().unwrap()).map(Some);
    }
    let d = load_pair(r, a)?;
    match dig_from_dis(&d) {
        Ok(g) => {
            r.pass("double_inverse");
            Ok(Some(g))
        }
        Err(e) => {
            r.fail("double_inverse", failure(e)?);
            Ok(None)
        }
    }
}

pub fn double(c: &DoubleCommand) -> CliResult<Report> {
    match c {
        DoubleCommand::ToDig(a) => {
            let mut r = Report::new("double to-dig");
            if let Some(g) = load_structure(&mut r, a)? {
                r.result = json!({ "cells": g.cell_count(), "objects": g.object_count() });
                r.note(format!("cells: {}, objects: {}", g.cell_count(), g.object_count()));
                r.dot = Some(g.to_dot());
                r.artifact = Some(Artifact::Json(g.to_document().to_json()));
            }
            Ok(r)
        }
        DoubleCommand::ToDis { path } => {
            let mut r = Report::new("double to-dis");
            let g = load_dig(&mut r, path)?;
            match dis_from_dig(&g) {
                Ok(d) => {
                    r.pass("double_inverse_semigroup");
                    r.artifact = Some(Artifact::Text(d.to_cay()));
                }
                Err(e) => r.fail("double_inverse_semigroup", failure(e)?),
            }
            Ok(r)
        }
        DoubleCommand::ValidateAxioms { input, strict_axiom_ix } => {
            let mut r = Report::new("double validate-axioms");
            if let Some(g) = load_structure(&mut r, input)? {
                let reading = if *strict_axiom_ix { IxReading::Literal } else { IxReading::Corrected };
                axiom_checks(&mut r, &validate_dig(&g, reading));
            }
            Ok(r)
        }
        DoubleCommand::VerifyInterchange(a) => {
            let mut r = Report::new("double verify-interchange");
            if let Some(g) = load_structure(&mut r, a)? {
                match verify_interchange_proof(&g) {
                    Ok(report) => axiom_checks(&mut r, &report),
                    Err(e) => r.fail("valid_double_groupoid", failure(e)?),
                }
            }
            Ok(r)
        }
        DoubleCommand::Roundtrip(a) => {
            let mut r = Report::new("double roundtrip");
            let g = match load_structure(&mut r, a)? {
                Some(g) => g,
                None => return Ok(r),
            };
            match roundtrip_dig(&g) {
                Ok(Verdict::Holds) => r.pass("roundtrip_dig"),
                Ok(Verdict::Fails(w)) => r.fail("roundtrip_dig", w),
                Err(e) => r.fail("roundtrip_dig", failure(e)?),
            }
            match dis_from_dig(&g).and_then(|d| roundtrip_dis(&d)) {
                Ok(Verdict::Holds) => r.pass("roundtrip_dis"),
                Ok(Verdict::Fails(w)) => r.fail("roundtrip_dis", w),
                Err(e) => r.fail("roundtrip_dis", failure(e)?),
            }
            Ok(r)
        }
    }
}

pub fn decompose(a: &PairArgs) -> CliResult<Report> {
    let mut r = Report::new("decompose");
    let d = load_pair(&mut r, a)?;
    let v = is_double_inverse_semigroup(&d);
    if !r.check("double_inverse", v.holds(), || v.witness().unwrap().to_string()) {
        return Ok(r);
    }
    match presheaf::decompose(&d) {
        Ok(x) => {
            r.pass("decomposition");
            let m = &x.report;
            r.note(format!("improper: {}, commutative: {}, clifford: {}", m.improper, m.commutative, m.clifford));
            r.note(format!("objects: {}, component orders: {}", m.objects, labels(&m.component_orders)));
            r.result = serde_json::to_value(m).expect("reports serialize");
            r.artifact = Some(Artifact::Json(x.presheaf.to_document().to_json()));
        }
        Err(e) => r.fail("decomposition", failure(e)?),
    }
    Ok(r)
}

pub fn compose(path: &Path) -> CliResult<Report> {
    let mut r = Report::new("compose");
    let text = r.read(path)?;
    let doc = PresheafDocument::from_json(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let p = match doc.to_presheaf() {
        Ok(p) => p,
        Err(e) => {
            r.fail("presheaf", failure(e)?);
            return Ok(r);
        }
    };
    r.pass("presheaf");
    match presheaf::compose(&p) {
        Ok(d) => {
            let v = is_double_inverse_semigroup(&d);
            r.check("double_inverse", v.holds(), || v.witness().unwrap().to_string());
            r.check("improper", !is_proper(&d), || "the two operations differ".into());
            r.result = json!({ "order": d.order() });
            r.artifact = Some(Artifact::Text(d.to_cay()));
        }
        Err(e) => r.fail("double_inverse", failure(e)?),
    }
    Ok(r)
}

fn search_checks(r: &mut Report, s: &SearchReport) {
    for c in &s.claims {
        r.check(&c.name, c.holds, || c.witness.clone().unwrap_or_default());
    }
}

pub fn search(a: &SearchArgs) -> CliResult<Report> {
    if a.order == 0 {
        return Err(usage("order must be at least 1"));
    }
    let mut r = Report::new("search");
    let s = if a.pairs {
        let class = match a.class.as_str() {
            "all" => PairClass::Semigroup,
            other => other.parse::<PairClass>().map_err(usage)?,
        };
        let s = search_double(a.order, class)?;
        search_checks(&mut r, &s);
        let proper = s.proper_labeled.unwrap_or(0);
        if a.expect_none {
            r.check("no_proper_pairs", proper == 0, || format!("{proper} proper pair(s)"));
        }
        r.note(format!(
            "pairs: {} labeled, {} classes, {} proper labeled, {} proper classes",
            s.labeled_count,
            s.class_count,
            proper,
            s.proper_classes.unwrap_or(0)
        ));
        s
    } else {
        let mut class = match a.class.as_str() {
            "semigroup" => SemigroupClass::All,
            other => other.parse::<SemigroupClass>().map_err(usage)?,
        };
        if a.noncommutative {
            if class != SemigroupClass::Inverse {
                return Err(usage("--noncommutative applies to --class inverse"));
            }
            class = SemigroupClass::NonCommutativeInverse;
        }
        let s = enumerate_semigroups(a.order, class)?;
        search_checks(&mut r, &s);
        if a.expect_none {
            r.check("none_found", s.labeled_count == 0, || format!("{} table(s)", s.labeled_count));
        }
        r.note(format!("tables: {} labeled, {} classes", s.labeled_count, s.class_count));
        s
    };
    r.result = serde_json::to_value(&s).expect("reports serialize");
    Ok(r)
}
