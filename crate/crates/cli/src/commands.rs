//! Subcommands. Every command yields `key value` lines; traces start with `#`.

use std::fmt::Display;
use std::path::PathBuf;

use rayon::prelude::*;

use complete_ideals::oracle::{cross_check_report, exhaustive_antinef_closure};
use complete_ideals::realize::{epsilon_bound_at, reverify};
use complete_ideals::{
    canonical_divisor, classify_adjoint, floor_report, intersection_matrix, jumping_numbers, multiplier_ideal,
    realize_with, CompleteIdeal, Divisor, Exponent, RealizationCertificate, RealizeOptions,
};

use crate::document::{parse, Document, IdealData, Item};
use crate::error::CliError;
use crate::workspace::{point_specs, Object, Workspace};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate,
    Emit,
    Matrix(String),
    Canonical(String),
    Unload(String),
    Factor(String),
    Colength(String),
    Order(String),
    Mult { name: String, c: Exponent, equals: Option<String> },
    Jump { name: String, max: Exponent },
    Realize { name: String, c: Option<Exponent>, chains: Option<Vec<u64>> },
    Adjoint(String),
    OracleClosure(String),
    OracleCross { name: String, c: Exponent },
    Verify,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 3;

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub lines: Vec<String>,
    pub exit: i32,
    verbose: bool,
    /// Re-parseable certificate document from `realize`.
    pub certificate: Option<Document>,
}

impl Report {
    pub fn new(verbose: bool) -> Self {
        Report { verbose, ..Default::default() }
    }

    fn line(&mut self, key: &str, value: impl Display) {
        let value = value.to_string();
        self.lines.push(if value.is_empty() { key.to_string() } else { format!("{key} {value}") });
    }

    fn trace(&mut self, f: impl FnOnce() -> String) {
        if self.verbose {
            self.lines.push(format!("# {}", f()));
        }
    }

    fn check(&mut self, key: &str, ok: bool) {
        self.line(key, verdict(ok));
        if !ok {
            self.exit = self.exit.max(EXIT_VERIFICATION);
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "OK"
    } else {
        "FAILED"
    }
}

fn join<T: Display>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

/// Parses `text` and runs `cmd` on it.
pub fn run_text(cmd: &Command, text: &str, verbose: bool) -> Result<Report, CliError> {
    run(cmd, &parse(text)?, verbose)
}

pub fn run(cmd: &Command, doc: &Document, verbose: bool) -> Result<Report, CliError> {
    let mut r = Report::new(verbose);
    if *cmd == Command::Validate {
        validate_document(doc, &mut r);
        return Ok(r);
    }
    if *cmd == Command::Emit {
        r.lines = doc.emit().lines().map(String::from).collect();
        return Ok(r);
    }
    let ws = Workspace::load(doc)?;
    match cmd {
        Command::Validate | Command::Emit => unreachable!(),
        Command::Matrix(name) => {
            let c = ws.cluster(name)?;
            for (i, row) in c.proximity_matrix().entries.iter().enumerate() {
                r.line("proximity_row", format!("{} {}", i + 1, join(row)));
            }
            let form = intersection_matrix(&c);
            for (i, row) in form.entries.iter().enumerate() {
                r.line("intersection_row", format!("{} {}", i + 1, join(row)));
            }
            r.line("determinant", form.determinant());
            r.line("negative_definite", form.is_negative_definite());
        }
        Command::Canonical(name) => {
            let k = canonical_divisor(&ws.cluster(name)?);
            r.line("canonical_values", &k);
            r.line("canonical_mults", join(&k.multiplicities()));
        }
        Command::Unload(name) => {
            let d = ws.divisor(name)?;
            r.trace(|| format!("pairings {}", join(&d.pairings())));
            let u = d.unload();
            r.line("input", &d);
            r.line("unloaded", &u);
            r.line("mults", join(&u.multiplicities()));
            r.line("excesses", join(&u.excesses()));
        }
        Command::Factor(name) => {
            let ideal = ws.ideal(name)?;
            let factors = ideal.factor_simple();
            for f in &factors {
                r.trace(|| {
                    format!(
                        "G_{} values {}",
                        f.point.0,
                        CompleteIdeal::simple(ideal.cluster(), f.point)
                            .map(|g| g.divisor().to_string())
                            .unwrap_or_default()
                    )
                });
                r.line("factor", format!("{} {}", f.point, f.exponent));
            }
            r.line("factors", factors.len());
        }
        Command::Colength(name) => r.line("colength", ws.ideal(name)?.colength()),
        Command::Order(name) => r.line("order", ws.ideal(name)?.order()),
        Command::Mult { name, c, equals } => {
            let ideal = ws.ideal(name)?;
            r.trace(|| format!("floor(cG)-K {}", floor_minus_canonical(ideal.divisor(), *c)));
            let m = multiplier_ideal(&ideal, *c);
            r.line("c", c);
            r.line("values", m.divisor());
            r.line("mults", m.point_basis());
            r.line("base_mults", m.trimmed().point_basis());
            if let Some(other) = equals {
                let same = m.same_ideal(&ws.ideal(other)?)?;
                r.line("equals", format!("{other} {same}"));
                if !same {
                    r.exit = EXIT_VERIFICATION;
                }
            }
        }
        Command::Jump { name, max } => {
            let jumps = jumping_numbers(&ws.ideal(name)?, *max)?;
            r.line("jumping_numbers", join(&jumps));
            r.line("count", jumps.len());
        }
        Command::Realize { name, c, chains } => {
            let j = ws.ideal(name)?;
            if !j.is_unit() {
                let k = canonical_divisor(j.cluster());
                for p in j.cluster().points() {
                    let (a, b) = (j.divisor().coeff(p), k.coeff(p));
                    r.trace(|| format!("{p} a {a} b {b}"));
                }
            }
            let opts = RealizeOptions { c: *c, chains: chains.clone(), ..Default::default() };
            let cert = realize_with(&j, &opts)?;
            realize_report(name, &cert, &mut r)?;
            r.certificate = Some(certificate_document(name, &cert));
        }
        Command::Adjoint(name) => {
            let j = ws.ideal(name)?;
            let cls = classify_adjoint(&j)?;
            r.line("order", j.order());
            r.line("adjoint", cls.adjoint);
            r.trace(|| format!("J(J^2) mults {}", cls.adjoint_of_square.point_basis()));
            if cls.adjoint {
                r.check("witness J(J^2)=J", cls.witness_holds);
            } else {
                r.line("witness", "none");
            }
        }
        Command::OracleClosure(name) => {
            let d = ws.divisor(name)?;
            let closure = exhaustive_antinef_closure(&d)?;
            let u = d.unload();
            r.line("unloaded", &u);
            r.line("closure", &closure);
            r.check("agree", closure == u);
        }
        Command::OracleCross { name, c } => {
            let rep = cross_check_report(&ws.monomial(name)?, *c)?;
            r.line("c", c);
            r.line("howald", if rep.howald.is_unit() { "unit".to_string() } else { rep.howald.to_string() });
            r.line("divisorial", join(&rep.divisorial));
            r.line("monomial", join(&rep.monomial));
            r.line("weights_consistent", rep.weights_consistent && rep.howald_weights_consistent);
            r.line("agree", rep.agree);
            r.check("verification", rep.passed());
        }
        Command::Verify => {
            let mut count = 0;
            for (name, obj) in ws.objects() {
                if let Object::Certificate { target, companion, c } = obj {
                    count += 1;
                    let ok = verify_certificate(&ws, target, companion, *c)?;
                    r.check(&format!("certificate {name}"), ok);
                }
            }
            r.line("certificates", count);
        }
    }
    Ok(r)
}

fn floor_minus_canonical(d: &Divisor, c: Exponent) -> String {
    let k = canonical_divisor(d.cluster());
    d.floor_scale(c.value()).try_sub(&k).map(|x| x.to_string()).unwrap_or_default()
}

fn validate_document(doc: &Document, r: &mut Report) {
    let (_, errors) = Workspace::load_lenient(doc);
    for item in &doc.items {
        let failed: Vec<&CliError> = errors
            .iter()
            .filter(
                |e| matches!(e, CliError::Semantic { name, kind, .. } if name == item.name() && *kind == item.kind()),
            )
            .collect();
        if failed.is_empty() {
            r.line("valid", format!("{} {}", item.kind(), item.name()));
        }
    }
    for e in &errors {
        r.line("invalid", e);
    }
    r.line("status", if errors.is_empty() { "OK" } else { "FAILED" });
    if !errors.is_empty() {
        r.exit = EXIT_DOMAIN;
    }
}

fn realize_report(name: &str, cert: &RealizationCertificate, r: &mut Report) -> Result<(), CliError> {
    r.line("target", name);
    match cert.epsilon_bound {
        Some(bound) => {
            let (_, at) = epsilon_bound_at(&cert.target)?;
            r.line("epsilon_bound", bound);
            r.line("epsilon_bound_point", at);
        }
        None => r.line("epsilon_bound", "none"),
    }
    r.line("epsilon", cert.parameters.epsilon);
    r.line("c", cert.parameters.c);
    for ch in &cert.plan.chains {
        r.line("chain", format!("{} excess {} length {}", ch.point, ch.excess, ch.length));
    }
    r.line("N", cert.plan.total());
    r.line("new_points", cert.plan.new_points());
    r.line("companion_mults", cert.companion.point_basis());
    r.trace(|| format!("companion values {}", cert.companion.divisor()));
    r.trace(|| format!("recomputed values {}", cert.transcript.recomputed.divisor()));
    r.line("windows", verdict(cert.windows.all_ok()));
    if !cert.is_trivial() {
        let floor = floor_report(cert)?;
        r.trace(|| format!("floor(A) {}", join(&floor.floor_a)));
        r.line("floor_check", verdict(floor.holds()));
    }
    r.check("verification", cert.is_verified() && reverify(cert)?);
    Ok(())
}

/// A self-contained document: `X`, `J`, `Y`, `I` and the certificate.
pub fn certificate_document(name: &str, cert: &RealizationCertificate) -> Document {
    let (x, y, i) = (format!("{name}_X"), format!("{name}_Y"), format!("{name}_I"));
    let mut doc = Document::default();
    doc.push(Item::Cluster { name: x.clone(), points: point_specs(cert.target.cluster()) });
    doc.push(Item::Ideal {
        name: name.to_string(),
        cluster: x,
        data: IdealData::Mults,
        entries: cert.target.point_basis().0,
    });
    doc.push(Item::Cluster { name: y.clone(), points: point_specs(&cert.extended) });
    doc.push(Item::Ideal {
        name: i.clone(),
        cluster: y,
        data: IdealData::Mults,
        entries: cert.companion.point_basis().0,
    });
    doc.push(Item::Certificate {
        name: format!("{name}_cert"),
        target: name.to_string(),
        companion: i,
        c: cert.parameters.c,
    });
    doc
}

fn verify_certificate(ws: &Workspace, target: &str, companion: &str, c: Exponent) -> Result<bool, CliError> {
    let j = ws.ideal(target)?;
    let i = ws.ideal(companion)?;
    let expected = j.pullback(i.cluster())?;
    Ok(multiplier_ideal(&i, c) == expected)
}

/// Realizes every ideal and checks every certificate of each document.
/// Documents run in parallel; output keeps input order.
pub fn batch(paths: &[PathBuf]) -> (String, i32) {
    let results: Vec<(String, i32)> = paths.par_iter().map(batch_one).collect();
    let exit = results.iter().map(|r| r.1).max().unwrap_or(EXIT_OK);
    (results.into_iter().map(|r| r.0).collect(), exit)
}

fn batch_one(path: &PathBuf) -> (String, i32) {
    let mut out = format!("file {}\n", path.display());
    let result = (|| -> Result<(String, i32), CliError> {
        let doc = parse(&std::fs::read_to_string(path)?)?;
        let ws = Workspace::load(&doc)?;
        let (mut text, mut exit) = (String::new(), EXIT_OK);
        for (name, obj) in ws.objects() {
            let ok = match obj {
                Object::Ideal(_) | Object::Monomial(_) => {
                    let cert = realize_with(&ws.ideal(name)?, &RealizeOptions::default())?;
                    cert.is_verified()
                }
                Object::Certificate { target, companion, c } => verify_certificate(&ws, target, companion, *c)?,
                _ => continue,
            };
            text += &format!(
                "{} {name} {}\n",
                if matches!(obj, Object::Certificate { .. }) { "certificate" } else { "realize" },
                verdict(ok)
            );
            if !ok {
                exit = EXIT_VERIFICATION;
            }
        }
        Ok((text, exit))
    })();
    match result {
        Ok((text, exit)) => {
            out += &text;
            (out, exit)
        }
        Err(e) => {
            out += &format!("error {e}\n");
            (out, e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CHAIN: &str = "cluster C\npoint 1 root\npoint 2 parent 1\nideal J on C mults 2 1\n";

    fn lines(cmd: Command, text: &str) -> Vec<String> {
        run_text(&cmd, text, false).unwrap().lines
    }

    #[test]
    fn basic_reports() {
        assert_eq!(lines(Command::Order("J".into()), CHAIN), ["order 2"]);
        assert_eq!(lines(Command::Colength("J".into()), CHAIN), ["colength 4"]);
        assert_eq!(lines(Command::Factor("J".into()), CHAIN), ["factor p1 1", "factor p2 1", "factors 2"]);
        assert_eq!(lines(Command::Canonical("C".into()), CHAIN), ["canonical_values 1 2", "canonical_mults 1 1"]);
        let m = lines(Command::Matrix("C".into()), CHAIN);
        assert_eq!(m[2], "intersection_row 1 -2 1");
        assert_eq!(m[4..], ["determinant 1", "negative_definite true"]);
    }

    #[test]
    fn traces_only_when_verbose() {
        let cmd = Command::Unload("J".into());
        let quiet = run_text(&cmd, CHAIN, false).unwrap().lines;
        let loud = run_text(&cmd, CHAIN, true).unwrap().lines;
        let filtered: Vec<String> = loud.into_iter().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(quiet, filtered);
    }

    #[test]
    fn realize_emits_a_checkable_certificate() {
        let r = run_text(&Command::Realize { name: "J".into(), c: None, chains: None }, CHAIN, false).unwrap();
        assert_eq!(r.exit, EXIT_OK);
        assert!(r.lines.contains(&"verification OK".to_string()));
        let cert = r.certificate.unwrap().emit();
        let v = run_text(&Command::Verify, &cert, false).unwrap();
        assert_eq!(v.lines, ["certificate J_cert OK", "certificates 1"]);
    }

    #[test]
    fn adjoint_witness() {
        let text = "cluster C\npoint 1 root\nideal M on C mults 1\n";
        assert_eq!(lines(Command::Adjoint("M".into()), text), ["order 1", "adjoint true", "witness J(J^2)=J OK"]);
        let err = run_text(&Command::Adjoint("J".into()), CHAIN, false).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }
}
