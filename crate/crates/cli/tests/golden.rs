use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_surftutte"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("binary runs")
}

fn golden(name: &str, args: &[&str]) {
    let out = run(args);
    assert!(out.status.success(), "{args:?} exited with {:?}: {}", out.status, String::from_utf8_lossy(&out.stderr));
    let want = std::fs::read_to_string(root().join("crates/cli/tests/golden").join(format!("{name}.txt"))).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), want, "{args:?}");
}

macro_rules! goldens {
    ($($name:ident: [$($arg:expr),*];)*) => {
        $(
            #[test]
            fn $name() {
                golden(stringify!($name), &[$($arg),*]);
            }
        )*
    };
}

goldens! {
    poly_tb2: ["poly", "data/tb2.map"];
    poly_fig2: ["poly", "data/fig2.map"];
    poly_fig2_recursive: ["poly", "--recursive", "data/fig2.map"];
    tutte_theta: ["tutte", "data/theta.map"];
    br_tb2: ["br", "data/tb2.map"];
    pprime_tb2: ["pprime", "data/tb2.map"];
    pbar_tb2: ["pbar", "data/tb2.map"];
    tildep_tb2: ["tildep", "data/tb2.map"];
    invariants_fig2: ["invariants", "data/fig2.map", "--edges", "1"];
    dual_theta: ["dual", "data/theta.map"];
    bracket_trefoil: ["bracket", "data/trefoil.vlk"];
    jones_trefoil: ["jones", "--classical", "data/trefoil.vlk"];
    bracket_vtrefoil: ["bracket", "--tilde", "data/vtrefoil.vlk"];
    tait_trefoil: ["tait", "data/trefoil.vlk"];
    verify_duality_tb2: ["verify", "duality", "data/tb2.map"];
    verify_thistlethwaite_torus: ["verify", "thistlethwaite", "data/torus-alt.vlk"];
    json_poly_tb2: ["--json", "poly", "data/tb2.map"];
    verify_all: ["verify", "all"];
    corpus_random: ["corpus", "random", "--count", "3", "--max-edges", "4", "--seed", "7"];
}

#[test]
fn spot_values() {
    let text = |args: &[&str]| String::from_utf8(run(args).stdout).unwrap();
    assert_eq!(text(&["poly", "data/tb2.map"]), "2 + A + B\n");
    assert_eq!(text(&["poly", "data/fig2.map"]), "2 + B + Y\n");
    assert!(text(&["verify", "duality", "data/tb2.map"]).ends_with("PASS\n"));
}

#[test]
fn input_errors_exit_2() {
    let dir = std::env::temp_dir().join(format!("surftutte-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.map");
    std::fs::write(&bad, "sigma: (1 2 3)\nalpha: (1 2)\n").unwrap();
    for args in [
        vec!["poly", bad.to_str().unwrap()],
        vec!["poly", "no/such/file.map"],
        vec!["br", "data/fig2.map"],
        vec!["tait", "data/vtrefoil.vlk"],
        vec!["verify", "duality"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"), "{args:?}");
    }
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn help_documents_both_grammars() {
    let out = String::from_utf8(run(&["--help"]).stdout).unwrap();
    assert!(out.contains("MAP FILES"));
    assert!(out.contains("LINK FILES"));
}
