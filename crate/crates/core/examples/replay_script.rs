//! Replaying bound scripts: a squeeze with one cited assumption, and a
//! script that fails at a named step.
use schur_core::bounds::{replay_named, replay_script, SCRIPTS};

fn main() {
    println!("shipped: {:?}", SCRIPTS.iter().map(|(n, _)| *n).collect::<Vec<_>>());
    let out = replay_named("phi7_squeeze", Some(3)).unwrap();
    for line in &out.trace {
        println!("  {line}");
    }
    println!("conclusion: {:?}", out.conclusion);
    println!("assumptions: {:?}", out.assumed);

    let custom = "use ES_p2_p3\napply extraspecial\nexpect structure [1]\napply green\nexpect upper p^3\n";
    let out = replay_script(custom, Some(5)).unwrap();
    println!("custom: {:?}", out.conclusion);

    let err = replay_named("d8_wrong_upper", None).unwrap_err();
    println!("expected failure: {err}");
}
