//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line. Expected values are frozen from independent oracles
//! (set/support arithmetic and brute-force closures computed in this file).

use std::collections::BTreeSet;
use std::time::Instant;

use parcat::corpus;
use parcat::equivar::{
    algebra_object, enumerate_equivariant, from_global, partial_trace, to_global,
    validate_algebra_object, validate_env_equivariant, validate_env_sigma_tilde,
    validate_global_equivariant, validate_trace_functorial, EnvAction,
};
use parcat::fincat::Ob;
use parcat::globalize::{build_globalization, validate_globalization};
use parcat::group::{Gel, Perm};
use parcat::linalg::{find_env_iso, EnvObj, IsoSearch};
use parcat::paction::{
    corrupt_action, extract_unital_data, restrict_global, validate_partial_action, MutationField,
    PartialAction, UnitalData,
};
use parcat::polyad::{build_monad, build_polyad, fusion_operators, validate_monad};
use parcat::smash::{
    assemble_view, covariant_psi, identity_covariant_pair, spot_check_pentagons,
    validate_canonical_functors, validate_smash_coherence, SmashContext,
};
use parcat::specfile::{self, Kind, SpecFile};

fn criterion(n: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n:2} [{}]: {name} — {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn unital(t: &PartialAction) -> UnitalData {
    let (ud, rep) = extract_unital_data(t, 1_000_000).unwrap();
    assert!(rep.passed(), "{:?}", rep.failures.first());
    ud.expect("unital")
}

fn env_for(inst: &corpus::Instance) -> EnvAction {
    let ud = unital(&inst.action);
    EnvAction::new(&inst.action, &ud, inst.linear.clone().unwrap()).unwrap()
}

fn names_of(t: &PartialAction, obs: &[Ob]) -> Vec<String> {
    obs.iter().map(|&o| t.cat().ob_name(o).to_string()).collect()
}

/// Criterion 1: restriction correctness against the set-arithmetic oracle.
#[test]
fn criterion_01_restriction() {
    // oracle for INST-TOP: Y = {1,3}, swap(1,2). Opens of Y lying in the
    // closure of swap-images of opens of Y are exactly the opens inside
    // Y ∩ swap(Y) = {3}.
    let y = 0b101u32;
    let swap = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
    let oracle_top: BTreeSet<u32> = (0..8u32)
        .filter(|m| m & y == *m && m & swap.apply_mask(y) == *m)
        .collect();
    assert_eq!(oracle_top, BTreeSet::from([0b000, 0b100]));

    let t0 = Instant::now();
    let inst = corpus::inst_top();
    let top_time = t0.elapsed();
    let t = &inst.action;
    let g = Gel(1);
    let got = names_of(t, &t.domain(g).sub.obs());
    let want: Vec<String> = oracle_top
        .iter()
        .map(|&m| corpus::mask_name(m))
        .collect();
    let ud = unital(t);
    let unit_ok = t.cat().ob_name(ud.unit_ob(g)) == "{3}";

    // oracle for INST-FUS: supports inside {1,2} ∩ σ^k({1,2})
    let cycle = Perm::from_cycles(3, &[vec![1, 2, 3]]).unwrap();
    let e_mask = 0b011u32;
    let oracle_fus_g: BTreeSet<u32> = (0..8u32)
        .filter(|m| m & e_mask == *m && m & cycle.apply_mask(e_mask) == *m)
        .collect();
    assert_eq!(oracle_fus_g, BTreeSet::from([0b000, 0b010]));
    let t1 = Instant::now();
    let fus = corpus::inst_fus();
    let fus_time = t1.elapsed();
    let udf = unital(&fus.action);
    let fus_units_ok = fus.action.cat().ob_name(udf.unit_ob(Gel(1))) == "{2}"
        && fus.action.cat().ob_name(udf.unit_ob(Gel(2))) == "{1}";

    let ok = got == want
        && unit_ok
        && fus_units_ok
        && inst.report.passed()
        && fus.report.passed()
        && top_time.as_secs() < 1
        && fus_time.as_secs() < 1;
    criterion(
        1,
        "restriction",
        ok,
        &format!(
            "C_g = {got:?}, unit_g = {{3}}; fus units M2/M1; generated in {top_time:?} / {fus_time:?}"
        ),
    );
}

/// Criterion 2: axiom suite across the generator sweep plus the mutation
/// campaign over γ, u, J, T_g, and the units.
#[test]
fn criterion_02_axioms_and_mutations() {
    let sweep = corpus::sweep();
    let sweep_ok = sweep.len() >= 10 && sweep.iter().all(|i| i.report.passed());

    let mut total = 0usize;
    let mut caught = 0usize;
    let mut witnessed = 0usize;
    for inst in [corpus::inst_top(), corpus::inst_fus(), corpus::inst_ring()] {
        let t = &inst.action;
        for field in MutationField::all() {
            for seed in 0..4u64 {
                let Some((mutant, _desc)) = corrupt_action(t, field, seed) else {
                    continue;
                };
                total += 1;
                let rep = validate_partial_action(&mutant);
                if !rep.passed() {
                    caught += 1;
                    if rep.failures.iter().all(|f| !f.witness.is_empty()) {
                        witnessed += 1;
                    }
                }
            }
        }
        // unit mutants: point 𝟙_g at every wrong object; detection is the
        // rebuilt ideal disagreeing with the stored domain
        let ud = unital(t);
        for g in t.group.elements() {
            for wrong in t.cat().obs() {
                if wrong == ud.unit_ob(g) {
                    continue;
                }
                total += 1;
                let mut ci = ud.unit(g).clone();
                ci.object = wrong;
                let detected = !parcat::idempotent::validate_central_idempotent(&t.ambient, &ci)
                    .passed()
                    || parcat::idempotent::generated_ideal(&t.ambient, &ci)
                        .map(|i| i.sub != t.domain(g).sub)
                        .unwrap_or(true);
                if detected {
                    caught += 1;
                    witnessed += 1;
                }
            }
        }
    }
    let ok = sweep_ok && total >= 50 && caught == total && witnessed == caught;
    criterion(
        2,
        "axiom suite + mutation campaign",
        ok,
        &format!(
            "{} sweep instances pass; {caught}/{total} mutants detected, all witnessed",
            sweep.len()
        ),
    );
}

/// Criterion 3: the standard globalization of INST-TOP.
#[test]
fn criterion_03_globalization() {
    // closure oracle: pointwise-∩ closure of the embedded tables and shifts
    let cap = |a: u32, b: u32| a & b;
    let tg = |m: u32| m & 0b100; // T_g on the restricted instance fixes {∅,{3}}
    let mut oracle: BTreeSet<(u32, u32)> = BTreeSet::new();
    for x in [0b000u32, 0b001, 0b100, 0b101] {
        oracle.insert((x, tg(x)));
        oracle.insert((tg(x), x));
    }
    loop {
        let snap: Vec<_> = oracle.iter().copied().collect();
        let before = oracle.len();
        for &(a1, a2) in &snap {
            for &(b1, b2) in &snap {
                oracle.insert((cap(a1, b1), cap(a2, b2)));
            }
        }
        if oracle.len() == before {
            break;
        }
    }
    assert_eq!(oracle.len(), 6, "closure oracle");

    let start = Instant::now();
    let inst = corpus::inst_top();
    let t = &inst.action;
    let ud = unital(t);
    let (glob, build_rep) = build_globalization(t, &ud, 10 * 4 * 2).unwrap();
    let cond_rep = validate_globalization(t, &ud, &glob);
    let elapsed = start.elapsed();
    let ok = glob.objects.len() == 6
        && build_rep.passed()
        && cond_rep.passed()
        && elapsed.as_secs() < 2;
    criterion(
        3,
        "globalization",
        ok,
        &format!(
            "6 objects (oracle 6), conditions + (Φ,τ) pentagon pass, {elapsed:?}"
        ),
    );
}

/// Criterion 4: monad laws and invertible fusion operators on every corpus
/// instance.
#[test]
fn criterion_04_hopf_polyad() {
    let mut detail = String::new();
    let mut ok = true;
    for inst in [
        corpus::trivial_instance(),
        corpus::inst_top(),
        corpus::inst_fus(),
        corpus::inst_ring(),
    ] {
        let start = Instant::now();
        let t = &inst.action;
        let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
        let (_, rep) = build_polyad(t, ud.as_ref()).unwrap();
        // explicit two-sided inverse check per operator
        let mut inverses_ok = true;
        for g in t.group.elements() {
            let monad = build_monad(t, g).unwrap();
            inverses_ok &= validate_monad(t, &monad).passed();
            if let Some(ud) = &ud {
                let (ops, frep) = fusion_operators(t, g, &monad, Some(ud)).unwrap();
                inverses_ok &= frep.passed();
                for (op, inv) in ops.hl.values().chain(ops.hr.values()) {
                    let c = t.cat();
                    inverses_ok &= c.compose(*inv, *op) == Some(c.identity(c.dom(*op)))
                        && c.compose(*op, *inv) == Some(c.identity(c.cod(*op)));
                }
            }
        }
        let elapsed = start.elapsed();
        ok &= rep.passed() && inverses_ok && elapsed.as_secs() < 5;
        detail.push_str(&format!("{}: {elapsed:?}; ", inst.name));
    }
    criterion(4, "Hopf polyad", ok, &detail);
}

/// Criterion 5: global/partial equivariance round trips and the INST-TOP
/// enumeration count.
#[test]
fn criterion_05_equivariantization_round_trip() {
    let global = corpus::gen_topology_instance(
        3,
        &corpus::discrete_opens(3),
        &Perm::from_cycles(3, &[vec![1, 2]]).unwrap(),
        0b111,
    )
    .unwrap();
    let t = &global.action;
    assert!(t.is_global());
    let ud = unital(t);
    let mut round_ok = true;
    let mut seen = 0;
    for x in t.cat().obs() {
        for e in enumerate_equivariant(t, x, 1_000_000).unwrap() {
            seen += 1;
            let ge = to_global(t, &ud, &e).unwrap();
            round_ok &= validate_global_equivariant(t, &ge).passed();
            let back = from_global(t, &ge).unwrap();
            round_ok &= back == e;
            let ge2 = to_global(t, &ud, &back).unwrap();
            round_ok &= ge2 == ge;
        }
    }
    let inst = corpus::inst_top();
    let mut count = 0;
    for x in inst.action.cat().obs() {
        count += enumerate_equivariant(&inst.action, x, 1_000_000).unwrap().len();
    }
    let ok = round_ok && seen > 0 && count == 4;
    criterion(
        5,
        "equivariantization round trip",
        ok,
        &format!("{seen} global round trips componentwise identical; inst-top enumerates {count} objects"),
    );
}

/// Criterion 6: the partial trace on INST-FUS and its functoriality.
#[test]
fn criterion_06_partial_trace() {
    let start = Instant::now();
    let inst = corpus::inst_fus();
    let ctx = env_for(&inst);
    let c = ctx.t.cat();
    let m1 = c.obs().find(|&o| c.ob_name(o) == "{1}").unwrap();
    let e_ob = c.obs().find(|&o| c.ob_name(o) == "{1,2}").unwrap();
    let tr_m1 = partial_trace(&ctx, m1, 1).unwrap();
    let iso_e = matches!(
        find_env_iso(&ctx.env, &tr_m1.carrier, &EnvObj::single(e_ob), 100_000),
        IsoSearch::Found(_)
    );
    let unit = ctx.t.ambient.unit.unwrap();
    let tr_unit = partial_trace(&ctx, unit, 1).unwrap();
    let blocks = names_of(&ctx.t, &tr_unit.carrier.0);
    let blocks_ok = blocks == ["{1,2}", "{2}", "{1}"];
    let not_unit = find_env_iso(&ctx.env, &tr_unit.carrier, &EnvObj::single(unit), 100_000)
        .is_none_certified();
    let sq = validate_env_sigma_tilde(&ctx, &tr_m1.st).passed()
        && validate_env_sigma_tilde(&ctx, &tr_unit.st).passed()
        && validate_env_equivariant(&ctx, &tr_m1.st, 1).passed();
    let functorial = validate_trace_functorial(&ctx).passed();
    let elapsed = start.elapsed();
    let ok = iso_e && blocks_ok && not_unit && sq && functorial && elapsed.as_secs() < 5;
    criterion(
        6,
        "partial trace",
        ok,
        &format!(
            "Tr(M1) ≅ E; Tr(𝟙) = {blocks:?} ≇ 𝟙 (certified); functorial over all composable pairs; {elapsed:?}"
        ),
    );
}

/// Criterion 7: smash coherence — the construction's pentagon and triangle,
/// machine-checked.
#[test]
fn criterion_07_smash_coherence() {
    let start = Instant::now();
    let top = corpus::inst_top_linear();
    let sc_top = SmashContext::new(env_for(&top), 1);
    let gens_top = sc_top.generators();
    assert_eq!(gens_top.len(), 8, "single-grade generators of inst-top");
    let rep_top = validate_smash_coherence(&sc_top, &gens_top, false);

    let fus = corpus::inst_fus();
    let sc_fus = SmashContext::new(env_for(&fus), 1);
    let gens_fus = sc_fus.generators();
    let rep_fus = validate_smash_coherence(&sc_fus, &gens_fus, false);
    // graded sums beyond multiplicity 1, spot-checked at the default cap
    let sc_fus2 = SmashContext::new(sc_fus.ctx.clone(), 2);
    let gens_fus2 = sc_fus2.generators();
    let rep_spot = spot_check_pentagons(&sc_fus2, &gens_fus2, 25, 0xC0FFEE);
    let elapsed = start.elapsed();
    let ok = rep_top.passed()
        && rep_fus.passed()
        && rep_spot.passed()
        && elapsed.as_secs() < 30;
    criterion(
        7,
        "smash coherence",
        ok,
        &format!(
            "inst-top: {} pentagon checks; inst-fus: {} + 25 spot checks at cap 2; zero failures; {elapsed:?}",
            gens_top.len().pow(4),
            gens_fus.len().pow(4)
        ),
    );
}

/// Criterion 8: canonical functors and the covariant pair (φ₀, π₀).
#[test]
fn criterion_08_canonical_functors() {
    let mut ok = true;
    let mut detail = String::new();
    for inst in [corpus::inst_top_linear(), corpus::inst_fus()] {
        let sc = SmashContext::new(env_for(&inst), 1);
        let rep = validate_canonical_functors(&sc, 100_000);
        ok &= rep.passed();
        let view = assemble_view(&sc, 200_000).unwrap();
        let cp = identity_covariant_pair(&sc, &view).unwrap();
        let (psi, psi_rep) = covariant_psi(&sc, &view, &cp).unwrap();
        ok &= psi_rep.passed() && !psi.is_empty();
        detail.push_str(&format!("{}: PR1-PR4 + compat + Ψ triangles; ", inst.name));
    }
    criterion(8, "canonical functors & covariant pair", ok, &detail);
}

/// Criterion 9: the algebra object and its σ̃ square (the construction's
/// open proof obligation, machine-verified per instance).
#[test]
fn criterion_09_algebra_object() {
    let mut ok = true;
    let mut detail = String::new();
    for inst in [corpus::inst_top_linear(), corpus::inst_fus()] {
        let ctx = env_for(&inst);
        let a = algebra_object(&ctx).unwrap();
        let laws = validate_algebra_object(&ctx, &a).passed();
        let square = validate_env_sigma_tilde(&ctx, &a.st).passed();
        ok &= laws && square;
        detail.push_str(&format!(
            "{}: laws pass, σ̃^A square machine-verified, instance-level; ",
            inst.name
        ));
    }
    criterion(9, "algebra object", ok, &detail);
}

/// Criterion 10: spec round trips for every constructed structure, and
/// byte-identical reports across parallelism settings.
#[test]
fn criterion_10_infrastructure() {
    let mut ok = true;
    let mut detail = String::new();
    // round trips of every construction output
    for (op, input, object) in [
        ("globalize", "corpus:inst-top", None),
        ("polyad", "corpus:inst-fus", None),
        ("equivariantize", "corpus:inst-top", None),
        ("smash", "corpus:inst-top-linear", None),
        ("trace", "corpus:inst-fus", Some("{1}")),
        ("algebra", "corpus:inst-fus", None),
    ] {
        let (rep, text) =
            parcat::cli::cmd_construct(op, input, None, None, object, false).unwrap();
        ok &= rep.passed;
        let text = text.unwrap();
        let loaded = SpecFile::load(&text).unwrap();
        let reserialized = loaded.save();
        ok &= reserialized == text;
        detail.push_str(&format!("{op}: round-trip ok; "));
    }
    // byte identity across thread counts, via the installed binary
    let exe = env!("CARGO_BIN_EXE_parcat");
    let run = |threads: &str, args: &[&str]| {
        let out = std::process::Command::new(exe)
            .args(args)
            .args(["--report", "json"])
            .env("PARCAT_THREADS", threads)
            .output()
            .expect("run parcat");
        assert!(out.status.success());
        out.stdout
    };
    for args in [
        vec!["validate", "corpus:inst-top"],
        // the pentagon sweep inside construct is the parallel section
        vec!["construct", "smash", "--in", "corpus:inst-top-linear"],
    ] {
        let single = run("1", &args);
        let multi = run("4", &args);
        ok &= single == multi;
    }
    detail.push_str("reports byte-identical at PARCAT_THREADS=1 and 4 (validate and construct smash)");
    criterion(10, "infrastructure", ok, &detail);
}

/// The reloaded constructions are not just printable but decodable back to
/// equal rich structures.
#[test]
fn construct_outputs_decode_to_equal_structures() {
    let (_, text) =
        parcat::cli::cmd_construct("globalize", "corpus:inst-top", None, None, None, false)
            .unwrap();
    let sf = SpecFile::load(&text.unwrap()).unwrap();
    assert_eq!(sf.kind, Some(Kind::Globalization));
    let decoded = specfile::decode(&sf).unwrap();
    let action = decoded.action.unwrap();
    assert!(validate_partial_action(&action).passed());
    let sf2 = specfile::encode_action(&action, None, Kind::Globalization);
    assert_eq!(sf, sf2, "decode ∘ encode = id");
}
