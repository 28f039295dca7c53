//! Command-line front end: load/save the shared spec format, run verifiers,
//! construct derived categories, enumerate structures, and emit reports.
//!
//! Exit codes: 0 all checks passed, 1 validation failure, 2 malformed input,
//! 3 search/closure budget exceeded. `PARCAT_THREADS` (a positive integer)
//! caps worker parallelism; reports are byte-identical at any setting.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::corpus;
use crate::equivar::{
    algebra_object, assemble_equivariantization, enumerate_equivariant, partial_trace,
    validate_algebra_object, validate_env_equivariant, validate_env_sigma_tilde,
    validate_trace_functorial, EnvAction,
};
use crate::fincat::{validate_category, Ob};
use crate::globalize::{build_globalization, validate_globalization};
use crate::idempotent::enumerate_central_idempotents;
use crate::linalg::validate_linear;
use crate::monoidal::validate_semigroupal;
use crate::paction::{extract_unital_data, validate_partial_action, PartialAction, UnitalData};
use crate::polyad::build_polyad;
use crate::report::{CatError, DiagramReport, Failure};
use crate::smash::{
    assemble_view, spot_check_pentagons, validate_canonical_functors, validate_smash_coherence,
    SmashContext,
};
use crate::specfile::{self, Kind, SpecFile};

pub const TOOL_VERSION: &str = concat!("parcat ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "parcat", version, about = "Verification engine for partial group actions on finite strict monoidal categories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Validate a structure file (or corpus: instance) against its laws.
    Validate {
        /// Path to a spec file, or `corpus:<name>`.
        input: String,
        /// Include warnings about strictness conventions in the text output.
        #[arg(long)]
        strictness_warnings: bool,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Build a derived structure and write it in the shared text format.
    Construct {
        /// smash | globalize | trace | polyad | equivariantize | algebra
        op: String,
        #[arg(long = "in")]
        input: String,
        #[arg(long = "out")]
        output: Option<PathBuf>,
        /// Object/summand cap where the construction is capped.
        #[arg(long)]
        cap: Option<usize>,
        /// Base object for `trace`.
        #[arg(long)]
        object: Option<String>,
        /// Skip the pentagon sweep (the report will say so).
        #[arg(long)]
        skip_pentagon: bool,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
    /// Enumerate structures of an input deterministically.
    Enumerate {
        /// central-idempotents | equivariant
        what: String,
        #[arg(long = "in")]
        input: String,
        /// Carrier object name for `equivariant`.
        #[arg(long)]
        carrier: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        report: ReportFormat,
    },
}

/// Machine- and human-renderable run report.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub tool: String,
    pub command: String,
    pub spec_hash: String,
    pub passed: bool,
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
    pub info: BTreeMap<String, String>,
}

impl Report {
    fn new(command: String, spec_hash: String) -> Report {
        Report {
            tool: TOOL_VERSION.to_string(),
            command,
            spec_hash,
            passed: true,
            failures: Vec::new(),
            warnings: Vec::new(),
            info: BTreeMap::new(),
        }
    }

    fn absorb(&mut self, scope: &str, rep: DiagramReport) {
        self.passed &= rep.passed();
        for f in rep.failures {
            self.failures.push(Failure {
                check: format!("{scope}/{}", f.check),
                witness: f.witness,
            });
        }
        for w in rep.warnings {
            self.warnings.push(format!("{scope}: {w}"));
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.info.insert(key.to_string(), value.to_string());
    }

    pub fn render(&self, fmt: ReportFormat, show_warnings: bool) -> String {
        match fmt {
            ReportFormat::Json => serde_json::to_string_pretty(self).expect("report json") + "\n",
            ReportFormat::Text => {
                let mut out = String::new();
                out.push_str(&format!("{}\n", self.tool));
                out.push_str(&format!("command: {}\n", self.command));
                out.push_str(&format!("spec-hash: {}\n", self.spec_hash));
                for (k, v) in &self.info {
                    out.push_str(&format!("{k}: {v}\n"));
                }
                if show_warnings {
                    for w in &self.warnings {
                        out.push_str(&format!("warning: {w}\n"));
                    }
                }
                for f in &self.failures {
                    out.push_str(&format!("FAIL {}: {}\n", f.check, f.witness));
                }
                out.push_str(if self.passed { "result: PASS\n" } else { "result: FAIL\n" });
                out
            }
        }
    }
}

/// A loaded input: either a corpus instance or a decoded file.
struct Input {
    name: String,
    hash: String,
    kind: Kind,
    spec: SpecFile,
    action: Option<PartialAction>,
    linear: Option<std::sync::Arc<crate::linalg::LinearCategory>>,
    mon: std::sync::Arc<crate::monoidal::MonoidalStructure>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let out = h.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_input(input: &str) -> Result<Input, CatError> {
    if let Some(name) = input.strip_prefix("corpus:") {
        let inst = corpus::by_name(name)?;
        if !inst.report.passed() {
            return Err(CatError::MalformedSpec(format!(
                "corpus instance {name} fails validation: {:?}",
                inst.report.failures.first()
            )));
        }
        let spec = specfile::encode_action(&inst.action, inst.linear.as_deref(), Kind::Action);
        let text = spec.save();
        Ok(Input {
            name: input.to_string(),
            hash: sha256_hex(text.as_bytes()),
            kind: Kind::Action,
            spec,
            mon: inst.action.ambient.clone(),
            action: Some(inst.action),
            linear: inst.linear,
        })
    } else {
        let text = std::fs::read_to_string(input).map_err(|e| CatError::Io(e.to_string()))?;
        let spec = SpecFile::load(&text)?;
        let decoded = specfile::decode(&spec)?;
        Ok(Input {
            name: input.to_string(),
            hash: sha256_hex(text.as_bytes()),
            kind: decoded.kind,
            spec,
            mon: decoded.mon,
            action: decoded.action,
            linear: decoded.linear,
        })
    }
}

fn unital_context(input: &Input) -> Result<(PartialAction, UnitalData, Option<EnvAction>), CatError> {
    let action = input
        .action
        .clone()
        .ok_or_else(|| CatError::MalformedSpec("this command needs an action input".into()))?;
    let (ud, rep) = extract_unital_data(&action, 1_000_000)?;
    let Some(ud) = ud else {
        return Err(CatError::MalformedSpec(
            "the action is not generated by central idempotents".into(),
        ));
    };
    if !rep.passed() {
        return Err(CatError::MalformedSpec(format!(
            "unital data fails validation: {:?}",
            rep.failures.first()
        )));
    }
    let env = match &input.linear {
        Some(lin) => Some(EnvAction::new(&action, &ud, lin.clone())?),
        None => None,
    };
    Ok((action, ud, env))
}

fn ob_by_name(mon: &crate::monoidal::MonoidalStructure, name: &str) -> Result<Ob, CatError> {
    mon.base
        .obs()
        .find(|&o| mon.base.ob_name(o) == name)
        .ok_or_else(|| CatError::MalformedSpec(format!("no object named {name}")))
}

pub fn cmd_validate(input: &str) -> Result<Report, CatError> {
    let inp = load_input(input)?;
    let mut report = Report::new(format!("validate {}", inp.name), inp.hash.clone());
    report.note("kind", inp.kind.tag());
    report.note("objects", inp.mon.base.object_count());
    report.note("morphisms", inp.mon.base.morphism_count());
    report.absorb("category", validate_category(&inp.mon.base));
    report.absorb("tensor", validate_semigroupal(&inp.mon));
    if let Some(lin) = &inp.linear {
        report.absorb("linear", validate_linear(lin, Some(&inp.mon)));
    }
    if let Some(action) = &inp.action {
        report.absorb("action", validate_partial_action(action));
        if inp.kind == Kind::Globalization && !action.is_global() {
            report.failures.push(Failure {
                check: "globalization/global".into(),
                witness: "a globalization file must carry a global action".into(),
            });
            report.passed = false;
        }
        if inp.kind == Kind::Equivariant {
            if let (Some(env), false) = (
                unital_context(&inp).ok().and_then(|(_, _, e)| e),
                inp.spec.sigma_tilde.is_empty(),
            ) {
                match decode_env_sigma_tilde(&inp, &env) {
                    Ok(st) => {
                        report.absorb("sigma-tilde", validate_env_sigma_tilde(&env, &st));
                        report.absorb("equivariance", validate_env_equivariant(&env, &st, 1));
                        if !inp.spec.algebra_mu.is_empty() {
                            report.absorb(
                                "algebra-laws",
                                validate_stored_algebra(&inp, &env, &st.carrier),
                            );
                        }
                    }
                    Err(e) => {
                        report.failures.push(Failure {
                            check: "sigma-tilde/decode".into(),
                            witness: e.to_string(),
                        });
                        report.passed = false;
                    }
                }
            }
        }
    }
    if inp.kind == Kind::Smash && !inp.spec.associator.is_empty() {
        report.absorb("stored-coherence", validate_stored_smash(&inp));
    }
    Ok(report)
}

/// Re-run the pentagon and triangle over the stored associator/unitor tables
/// of a reloaded smash file, inside the loaded category.
fn validate_stored_smash(inp: &Input) -> DiagramReport {
    use crate::fincat::Mor;
    let mut rep = DiagramReport::new();
    let mon = &*inp.mon;
    let c = &*mon.base;
    let assoc: BTreeMap<(Ob, Ob, Ob), Mor> = inp
        .spec
        .associator
        .iter()
        .map(|&(a, b, x, m)| ((Ob(a as u32), Ob(b as u32), Ob(x as u32)), Mor(m as u32)))
        .collect();
    let unitors: BTreeMap<Ob, (Mor, Mor)> = inp
        .spec
        .unitors
        .iter()
        .map(|&(x, l, r)| (Ob(x as u32), (Mor(l as u32), Mor(r as u32))))
        .collect();
    for (&(a, b, x), &m) in &assoc {
        let want_dom = mon.ob(mon.ob(a, b), x);
        let want_cod = mon.ob(a, mon.ob(b, x));
        if c.dom(m) != want_dom || c.cod(m) != want_cod {
            rep.fail("associator-shape", format!("at ({a},{b},{x})"));
        } else if !c.is_iso(m) {
            rep.fail("NotIsomorphism", format!("associator at ({a},{b},{x})"));
        }
    }
    if !rep.passed() {
        return rep.finish();
    }
    let at = |a: Ob, b: Ob, x: Ob| -> Result<Mor, CatError> {
        assoc.get(&(a, b, x)).copied().ok_or_else(|| {
            CatError::ComponentShape(format!("missing associator at ({a},{b},{x})"))
        })
    };
    for a in c.obs() {
        for b in c.obs() {
            for x in c.obs() {
                for d in c.obs() {
                    let ok = (|| -> Result<bool, CatError> {
                        let ab = mon.ob(a, b);
                        let bx = mon.ob(b, x);
                        let xd = mon.ob(x, d);
                        let top = c.compose_path(&[
                            mon.mor_id(at(a, b, x)?, d),
                            at(a, bx, d)?,
                            mon.id_mor(a, at(b, x, d)?),
                        ])?;
                        let bottom = c.comp(at(a, b, xd)?, at(ab, x, d)?)?;
                        Ok(top == bottom)
                    })();
                    if !matches!(ok, Ok(true)) {
                        rep.fail("stored-pentagon", format!("at ({a},{b},{x},{d})"));
                    }
                }
            }
        }
    }
    if let Some(unit) = mon.unit {
        for a in c.obs() {
            for b in c.obs() {
                let ok = (|| -> Result<bool, CatError> {
                    let (_, ra) = *unitors
                        .get(&a)
                        .ok_or_else(|| CatError::ComponentShape(format!("no unitors at {a}")))?;
                    let (lb, _) = *unitors
                        .get(&b)
                        .ok_or_else(|| CatError::ComponentShape(format!("no unitors at {b}")))?;
                    let lhs = c.comp(mon.id_mor(a, lb), at(a, unit, b)?)?;
                    Ok(lhs == mon.mor_id(ra, b))
                })();
                if !matches!(ok, Ok(true)) {
                    rep.fail("stored-triangle", format!("at ({a},{b})"));
                }
            }
        }
    }
    rep.finish()
}

/// Rebuild μ and η of a reloaded algebra file and re-run the algebra laws.
fn validate_stored_algebra(
    inp: &Input,
    env: &EnvAction,
    carrier: &crate::linalg::EnvObj,
) -> DiagramReport {
    use crate::fincat::Mor;
    let mut rep = DiagramReport::new();
    let ok = (|| -> Result<(), CatError> {
        let aa = env.env.tensor_ob(carrier, carrier);
        let mu = env.env.mor(
            aa,
            carrier.clone(),
            inp.spec.algebra_mu.iter().map(|&m| Mor(m as u32)).collect(),
        )?;
        // η's domain is its sole summand
        let eta_entries: Vec<Mor> = inp.spec.algebra_eta.iter().map(|&m| Mor(m as u32)).collect();
        let dom = crate::linalg::EnvObj::single(env.t.cat().dom(eta_entries[0]));
        let eta = env.env.mor(dom, carrier.clone(), eta_entries)?;
        let id_a = env.env.id(carrier);
        let lhs = env.env.compose(&mu, &env.env.tensor_mor(&mu, &id_a))?;
        let rhs = env.env.compose(&mu, &env.env.tensor_mor(&id_a, &mu))?;
        if lhs != rhs {
            rep.fail("algebra-associativity", "reloaded μ fails associativity");
        }
        let left = env.env.compose(&mu, &env.env.tensor_mor(&eta, &id_a))?;
        let right = env.env.compose(&mu, &env.env.tensor_mor(&id_a, &eta))?;
        if left != id_a || right != id_a {
            rep.fail("algebra-unit", "reloaded η fails a unit law");
        }
        Ok(())
    })();
    if let Err(e) = ok {
        rep.fail("algebra-decode", e.to_string());
    }
    rep.finish()
}

fn decode_env_sigma_tilde(
    inp: &Input,
    env: &EnvAction,
) -> Result<crate::equivar::EnvSigmaTilde, CatError> {
    use crate::fincat::Mor;
    use crate::group::Gel;
    use crate::linalg::EnvObj;
    let carrier = EnvObj(
        inp.spec
            .carrier
            .iter()
            .map(|&(_, o)| Ob(o as u32))
            .collect(),
    );
    let mut table = BTreeMap::new();
    let grp = env.group();
    for (g, extras, entries) in &inp.spec.sigma_tilde {
        let g = Gel(*g as u32);
        let extras: Vec<Gel> = extras.iter().map(|&e| Gel(e as u32)).collect();
        let gi = grp.inv(g);
        let m = &*env.t.ambient;
        let mut dword = vec![env.ud.unit_ob(gi)];
        dword.extend(extras.iter().map(|&w| env.ud.unit_ob(w)));
        let dom_inner = EnvObj(
            carrier
                .0
                .iter()
                .map(|&b| m.ob(b, m.ob_word(&dword)))
                .collect(),
        );
        let dom = env.t_ob(g, &dom_inner)?;
        let mut cword = vec![env.ud.unit_ob(g)];
        cword.extend(extras.iter().map(|&w| env.ud.unit_ob(grp.mul(g, w))));
        let cod = EnvObj(
            carrier
                .0
                .iter()
                .map(|&b| m.ob(b, m.ob_word(&cword)))
                .collect(),
        );
        let mor = env.env.mor(
            dom,
            cod,
            entries.iter().map(|&e| Mor(e as u32)).collect(),
        )?;
        table.insert((g, extras), mor);
    }
    Ok(crate::equivar::EnvSigmaTilde { carrier, table })
}

pub fn cmd_construct(
    op: &str,
    input: &str,
    output: Option<&PathBuf>,
    cap: Option<usize>,
    object: Option<&str>,
    skip_pentagon: bool,
) -> Result<(Report, Option<String>), CatError> {
    let inp = load_input(input)?;
    let mut report = Report::new(
        format!("construct {op} --in {}", inp.name),
        inp.hash.clone(),
    );
    let out_text: Option<String> = match op {
        "globalize" => {
            let (action, ud, _) = unital_context(&inp)?;
            let default_cap = 10 * action.cat().object_count() * action.group.order();
            let (glob, rep) = build_globalization(&action, &ud, cap.unwrap_or(default_cap))?;
            report.absorb("build", rep);
            report.absorb("conditions", validate_globalization(&action, &ud, &glob));
            report.note("objects", glob.objects.len());
            report.note("morphisms", glob.cat.base.morphism_count());
            report.note("checks", "shift action, Φ semigroupal, (Φ,τ) pentagon, conditions 1-3");
            let sf = specfile::encode_action(&glob.action, None, Kind::Globalization);
            Some(sf.save())
        }
        "smash" => {
            let (_, _, env) = unital_context(&inp)?;
            let env = env.ok_or_else(|| {
                CatError::MalformedSpec("smash needs a linear ambient (field != none)".into())
            })?;
            let sc = SmashContext::new(env, cap.unwrap_or(2));
            let gens = sc.generators();
            report.note("generators", gens.len());
            report.note("cap", sc.cap);
            // exhaustive coherence at multiplicity 1, spot checks above
            let sc1 = SmashContext::new(sc.ctx.clone(), 1);
            let gens1 = sc1.generators();
            report.absorb(
                "coherence",
                validate_smash_coherence(&sc1, &gens1, skip_pentagon),
            );
            if sc.cap > 1 && !skip_pentagon {
                report.absorb("pentagon-spot", spot_check_pentagons(&sc, &gens, 25, 0xC0FFEE));
                report.note(
                    "checks",
                    format!(
                        "pentagon exhaustive over {} multiplicity-1 quadruples, {} spot checks at cap {}",
                        gens1.len().pow(4),
                        25,
                        sc.cap
                    ),
                );
            } else {
                report.note(
                    "checks",
                    format!("pentagon over {} quadruples", gens1.len().pow(4)),
                );
            }
            report.absorb("canonical-functors", validate_canonical_functors(&sc1, 100_000));
            let view = assemble_view(&sc1, 200_000)?;
            report.note("view-objects", view.objects.len());
            report.note("view-morphisms", view.morphisms.len());
            report.note(
                "view-cap",
                "1 (the exported view is the multiplicity-1 generating skeleton; graded sums are formal sums of its objects)",
            );
            let mut sf = specfile::encode_category(&view.mon, None, Kind::Smash);
            for (i, a) in view.objects.iter().enumerate() {
                sf.grades.push((i, a.g.0 as usize));
            }
            sf.group_names = sc.ctx.group().names.clone();
            for a in sc.ctx.group().elements() {
                for b in sc.ctx.group().elements() {
                    sf.group_mul.push((
                        a.0 as usize,
                        b.0 as usize,
                        sc.ctx.group().mul(a, b).0 as usize,
                    ));
                }
            }
            for (&(a, b, c), &m) in &view.associator {
                sf.associator
                    .push((a.0 as usize, b.0 as usize, c.0 as usize, m.0 as usize));
            }
            for (&x, &l) in &view.left_unitor {
                sf.unitors
                    .push((x.0 as usize, l.0 as usize, view.right_unitor[&x].0 as usize));
            }
            Some(sf.save())
        }
        "trace" => {
            let (_, _, env) = unital_context(&inp)?;
            let env = env.ok_or_else(|| {
                CatError::MalformedSpec("trace needs a linear ambient (field != none)".into())
            })?;
            let name = object.ok_or_else(|| {
                CatError::MalformedSpec("trace needs --object <name>".into())
            })?;
            let x = ob_by_name(&env.t.ambient, name)?;
            let tr = partial_trace(&env, x, 1)?;
            report.absorb("sigma-tilde-square", validate_env_sigma_tilde(&env, &tr.st));
            report.absorb("equivariance", validate_env_equivariant(&env, &tr.st, 1));
            report.absorb("functoriality", validate_trace_functorial(&env));
            let blocks: Vec<String> = tr
                .carrier
                .0
                .iter()
                .map(|&o| env.t.cat().ob_name(o).to_string())
                .collect();
            report.note("trace-of", name);
            report.note("carrier", blocks.join(" ⊕ "));
            let mut sf = specfile::encode_action(
                &env.t,
                inp.linear.as_deref(),
                Kind::Equivariant,
            );
            for (g, &o) in tr.carrier.0.iter().enumerate() {
                sf.carrier.push((g, o.0 as usize));
            }
            for ((g, extras), m) in &tr.st.table {
                sf.sigma_tilde.push((
                    g.0 as usize,
                    extras.iter().map(|e| e.0 as usize).collect(),
                    m.entries().iter().map(|e| e.0 as usize).collect(),
                ));
            }
            Some(sf.save())
        }
        "algebra" => {
            let (_, _, env) = unital_context(&inp)?;
            let env = env.ok_or_else(|| {
                CatError::MalformedSpec("algebra needs a linear ambient (field != none)".into())
            })?;
            let a = algebra_object(&env)?;
            report.absorb("laws", validate_algebra_object(&env, &a));
            let sq = validate_env_sigma_tilde(&env, &a.st);
            let verdict = if sq.passed() {
                "machine-verified, instance-level"
            } else {
                "FAILED"
            };
            report.absorb("sigma-tilde-square", sq);
            report.note("sigma-tilde-square-status", verdict);
            let blocks: Vec<String> = a
                .carrier
                .0
                .iter()
                .map(|&o| env.t.cat().ob_name(o).to_string())
                .collect();
            report.note("carrier", blocks.join(" ⊕ "));
            let mut sf = specfile::encode_action(
                &env.t,
                inp.linear.as_deref(),
                Kind::Equivariant,
            );
            for (i, &o) in a.carrier.0.iter().enumerate() {
                sf.carrier.push((i, o.0 as usize));
            }
            for ((g, extras), m) in &a.st.table {
                sf.sigma_tilde.push((
                    g.0 as usize,
                    extras.iter().map(|e| e.0 as usize).collect(),
                    m.entries().iter().map(|e| e.0 as usize).collect(),
                ));
            }
            sf.algebra_mu = a.mu.entries().iter().map(|e| e.0 as usize).collect();
            sf.algebra_eta = a.eta.entries().iter().map(|e| e.0 as usize).collect();
            Some(sf.save())
        }
        "polyad" => {
            let (action, ud, _) = unital_context(&inp)?;
            let (polyad, rep) = build_polyad(&action, Some(&ud))?;
            report.absorb("polyad", rep);
            report.note("monads", polyad.monads.len());
            for monad in &polyad.monads {
                report.note(
                    &format!("P_{}", action.group.name(monad.g)),
                    format!("{} objects", monad.mu.len()),
                );
            }
            let sf = specfile::encode_action(&action, inp.linear.as_deref(), Kind::Action);
            Some(sf.save())
        }
        "equivariantize" => {
            let action = inp
                .action
                .clone()
                .ok_or_else(|| CatError::MalformedSpec("equivariantize needs an action".into()))?;
            let (ud, _) = extract_unital_data(&action, 1_000_000)?;
            let (mon, objects, rep) =
                assemble_equivariantization(&action, ud.as_ref(), cap.unwrap_or(1_000_000))?;
            report.absorb("assembly", rep);
            report.note("objects", objects.len());
            report.note("morphisms", mon.base.morphism_count());
            report.absorb("category", validate_category(&mon.base));
            report.absorb("tensor", validate_semigroupal(&mon));
            let sf = specfile::encode_category(&mon, None, Kind::Category);
            Some(sf.save())
        }
        other => {
            return Err(CatError::MalformedSpec(format!(
                "unknown construction {other}; known: smash, globalize, trace, polyad, equivariantize, algebra"
            )));
        }
    };
    if let (Some(text), Some(path)) = (&out_text, output) {
        std::fs::write(path, text).map_err(|e| CatError::Io(e.to_string()))?;
        report.note("out", path.display());
    }
    Ok((report, out_text))
}

pub fn cmd_enumerate(
    what: &str,
    input: &str,
    carrier: Option<&str>,
) -> Result<Report, CatError> {
    let inp = load_input(input)?;
    let mut report = Report::new(
        format!("enumerate {what} --in {}", inp.name),
        inp.hash.clone(),
    );
    match what {
        "central-idempotents" => {
            let found = enumerate_central_idempotents(&inp.mon, 1_000_000)?;
            report.note("count", found.len());
            for (ci, witnesses) in &found {
                report.note(
                    &format!("idempotent {}", inp.mon.base.ob_name(ci.object)),
                    format!("{witnesses} witness(es)"),
                );
            }
        }
        "equivariant" => {
            let action = inp
                .action
                .clone()
                .ok_or_else(|| CatError::MalformedSpec("equivariant enumeration needs an action".into()))?;
            let carriers: Vec<Ob> = match carrier {
                Some(name) => vec![ob_by_name(&inp.mon, name)?],
                None => inp.mon.base.obs().collect(),
            };
            let mut total = 0;
            for x in carriers {
                let found = enumerate_equivariant(&action, x, 1_000_000)?;
                report.note(
                    &format!("carrier {}", inp.mon.base.ob_name(x)),
                    format!("{} σ-family(ies)", found.len()),
                );
                total += found.len();
            }
            report.note("count", total);
        }
        other => {
            return Err(CatError::MalformedSpec(format!(
                "unknown enumeration {other}; known: central-idempotents, equivariant"
            )));
        }
    }
    Ok(report)
}

/// Map an error to its process exit code.
pub fn exit_code_for(err: &CatError) -> i32 {
    match err {
        CatError::SearchBudgetExceeded { .. } | CatError::ClosureOverflow { .. } => 3,
        _ => 2,
    }
}

/// Entry point used by the binary. Returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Ok(threads) = std::env::var("PARCAT_THREADS") {
        match threads.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("PARCAT_THREADS must be a positive integer");
                return 2;
            }
        }
    }
    match cli.command {
        Command::Validate {
            input,
            strictness_warnings,
            report,
        } => match cmd_validate(&input) {
            Ok(r) => {
                print!("{}", r.render(report, strictness_warnings));
                if r.passed {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Construct {
            op,
            input,
            output,
            cap,
            object,
            skip_pentagon,
            report,
        } => match cmd_construct(
            &op,
            &input,
            output.as_ref(),
            cap,
            object.as_deref(),
            skip_pentagon,
        ) {
            Ok((r, text)) => {
                print!("{}", r.render(report, true));
                if output.is_none() {
                    if let Some(t) = text {
                        print!("{t}");
                    }
                }
                if r.passed {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
        Command::Enumerate {
            what,
            input,
            carrier,
            report,
        } => match cmd_enumerate(&what, &input, carrier.as_deref()) {
            Ok(r) => {
                print!("{}", r.render(report, true));
                if r.passed {
                    0
                } else {
                    1
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                exit_code_for(&e)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_corpus_instances() {
        for name in ["corpus:trivial", "corpus:inst-top", "corpus:inst-fus", "corpus:inst-ring"] {
            let r = cmd_validate(name).unwrap();
            assert!(r.passed, "{name}: {:?}", r.failures.first());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = cmd_validate("corpus:inst-top").unwrap();
        let b = cmd_validate("corpus:inst-top").unwrap();
        assert_eq!(
            a.render(ReportFormat::Json, true),
            b.render(ReportFormat::Json, true)
        );
    }

    #[test]
    fn enumerate_central_idempotents_of_inst_top() {
        let r = cmd_enumerate("central-idempotents", "corpus:inst-top", None).unwrap();
        assert_eq!(r.info["count"], "4");
    }

    #[test]
    fn enumerate_equivariant_counts() {
        let r = cmd_enumerate("equivariant", "corpus:inst-top", None).unwrap();
        assert_eq!(r.info["count"], "4");
        let r = cmd_enumerate("equivariant", "corpus:trivial", None).unwrap();
        assert_eq!(r.info["count"], "1");
    }

    #[test]
    fn construct_globalize_emits_a_reloadable_file() {
        let (r, text) = cmd_construct("globalize", "corpus:inst-top", None, None, None, false).unwrap();
        assert!(r.passed, "{:?}", r.failures.first());
        assert_eq!(r.info["objects"], "6");
        let sf = SpecFile::load(&text.unwrap()).unwrap();
        assert_eq!(sf.kind, Some(Kind::Globalization));
        let decoded = specfile::decode(&sf).unwrap();
        let action = decoded.action.unwrap();
        validate_partial_action(&action).expect_pass("reloaded globalization");
        assert!(action.is_global());
    }

    #[test]
    fn unknown_corpus_instance_is_malformed() {
        let err = cmd_validate("corpus:nope").unwrap_err();
        assert_eq!(exit_code_for(&err), 2);
    }
}
