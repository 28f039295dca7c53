use parcat::corpus;
use parcat::paction::{corrupt_action, validate_partial_action, MutationField};

fn main() {
    let mut total = 0;
    let mut caught = 0;
    let mut survived = Vec::new();
    for inst in corpus::sweep() {
        for field in MutationField::all() {
            for seed in 0..12u64 {
                if let Some((mutant, desc)) = corrupt_action(&inst.action, field, seed) {
                    total += 1;
                    if validate_partial_action(&mutant).passed() {
                        survived.push(format!("{}: {desc}", inst.name));
                    } else {
                        caught += 1;
                    }
                }
            }
        }
    }
    println!("extended sweep: {caught}/{total} detected");
    for s in survived.iter().take(10) {
        println!("  SURVIVED: {s}");
    }
}
