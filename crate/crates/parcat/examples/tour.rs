//! A tour of the engine on the built-in instances: restrict a global action,
//! extract its units, globalize it back, and take a trace in the envelope.

use parcat::corpus;
use parcat::equivar::{partial_trace, EnvAction};
use parcat::globalize::{build_globalization, validate_globalization};
use parcat::group::Gel;
use parcat::paction::extract_unital_data;

fn main() {
    // the restriction of the swap action on a 3-point space to the open {1,3}
    let inst = corpus::inst_top();
    let t = &inst.action;
    println!("{}: validates = {}", inst.name, inst.report.passed());
    let g = Gel(1);
    let domain: Vec<&str> = t
        .domain(g)
        .sub
        .obs()
        .iter()
        .map(|&o| t.cat().ob_name(o))
        .collect();
    println!("  C_g = {domain:?}");

    let (ud, _) = extract_unital_data(t, 1_000_000).unwrap();
    let ud = ud.expect("idempotent-generated");
    println!("  unit of C_g = {}", t.cat().ob_name(ud.unit_ob(g)));

    let (glob, _) = build_globalization(t, &ud, 100).unwrap();
    let report = validate_globalization(t, &ud, &glob);
    println!(
        "  globalization: {} objects, conditions pass = {}",
        glob.objects.len(),
        report.passed()
    );

    // a trace over the fusion skeleton
    let fus = corpus::inst_fus();
    let (udf, _) = extract_unital_data(&fus.action, 1_000_000).unwrap();
    let ctx = EnvAction::new(&fus.action, &udf.unwrap(), fus.linear.clone().unwrap()).unwrap();
    let m1 = fus
        .action
        .cat()
        .obs()
        .find(|&o| fus.action.cat().ob_name(o) == "{1}")
        .unwrap();
    let tr = partial_trace(&ctx, m1, 1).unwrap();
    let blocks: Vec<&str> = tr
        .carrier
        .0
        .iter()
        .map(|&o| fus.action.cat().ob_name(o))
        .collect();
    println!("{}: Tr(M1) = {}", fus.name, blocks.join(" ⊕ "));
}
