use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use sixfold::cli::{run, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use sixfold::exact_geom::{rat, Rat2};
use sixfold::families::{family_midpoints, freedom_region, DecagonFamily, OctagonVariant};

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn sixfold(args: &[&str], stdin: &str) -> Out {
    let mut input = stdin.as_bytes();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("sixfold").chain(args.iter().copied());
    let code = run(argv, &mut input, &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn verify_stdin(polygon: &str) -> Value {
    let o = sixfold(
        &["--json", "--samples", "200", "verify", "-", "integer"],
        polygon,
    );
    assert_eq!(o.code, EXIT_PASS, "{}{}", o.stdout, o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn octagon_families_round_trip() {
    for v in OctagonVariant::ALL
        .into_iter()
        .filter(|v| v.is_tile_family())
    {
        let f = v.family();
        for t in f.grid(10) {
            let t = t.to_string();
            let built = sixfold(&["family", v.cli_name(), "--param", &t], "");
            assert_eq!(
                built.code,
                EXIT_PASS,
                "{} {t}: {}",
                v.cli_name(),
                built.stderr
            );
            let report = verify_stdin(&built.stdout);
            assert_eq!(report["verdicts"][0]["verdict"], "pass");
            assert_eq!(report["verdicts"][0]["k"], f.k);
        }
    }
}

#[test]
fn decagon_families_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for fam in DecagonFamily::ALL {
        let r = freedom_region(&family_midpoints(fam), fam.reference_anchor()).unwrap();
        for _ in 0..10 {
            let w: Vec<i64> = r.vertices.iter().map(|_| rng.gen_range(1..20)).collect();
            let total: i64 = w.iter().sum();
            let f = r
                .vertices
                .iter()
                .zip(&w)
                .fold(Rat2::zero(), |a, (v, &wi)| &a + &v.scale(&rat(wi, total)));
            let fv = format!("{},{}", f.x, f.y);
            let built = sixfold(&["family", fam.cli_name(), "--free-vertex", &fv], "");
            assert_eq!(built.code, EXIT_PASS, "{}", built.stderr);
            let report = verify_stdin(&built.stdout);
            assert_eq!(report["verdicts"][0]["k"], fam.k());
        }
    }
}

#[test]
fn printed_octagon_fails_verification() {
    let built = sixfold(&["family", "octagon6-printed", "--param", "1/10"], "");
    assert_eq!(built.code, EXIT_PASS);
    let o = sixfold(&["verify", "-", "integer"], &built.stdout);
    assert_eq!(o.code, EXIT_FAIL);
    let o = sixfold(&["verify", "-", "--search-k", "6"], &built.stdout);
    assert_eq!(o.code, EXIT_FAIL);
}

#[test]
fn input_errors() {
    assert_eq!(
        sixfold(&["verify", "-"], r#"{"vertices":[["1","0"]"#).code,
        EXIT_INPUT
    );
    assert_eq!(
        sixfold(&["verify", "-"], r#"{"vertices":[["0.5","0"]]}"#).code,
        EXIT_INPUT
    );
    assert_eq!(
        sixfold(&["family", "octagon6", "--param", "1/6"], "").code,
        EXIT_INPUT
    );
    assert_eq!(
        sixfold(&["family", "decagon-A", "--free-vertex", "0,1"], "").code,
        EXIT_INPUT
    );
    assert_eq!(sixfold(&["family", "nonagon"], "").code, EXIT_INPUT);
    assert_eq!(sixfold(&["frobnicate"], "").code, EXIT_INPUT);
}

#[test]
fn report_echoes_inputs() {
    let text = r#"{"vertices":[["1/2","1/2"],["-1/2","1/2"],["-1/2","-1/2"],["1/2","-1/2"]]}"#;
    let o = sixfold(&["--json", "--seed", "9", "verify", "-", "integer"], text);
    assert_eq!(o.code, EXIT_PASS);
    let v: Value = serde_json::from_str(&o.stdout).unwrap();
    assert_eq!(v["command"], "verify");
    assert!(v["version"].is_string());
    assert!(v["timings_ms"].is_object());
    assert!(v["inputs"].to_string().contains("1/2"));
    assert_eq!(v["certificates"][0]["oracle"]["seed"], 9);
}

#[test]
fn region_and_enumerate() {
    let o = sixfold(&["--json", "region", "--family", "A"], "");
    assert_eq!(o.code, EXIT_PASS, "{}", o.stderr);
    for p in ["-1/3", "5/6", "-1/4", "3/4"] {
        assert!(o.stdout.contains(p), "{p}");
    }
    let o = sixfold(
        &[
            "--samples",
            "100",
            "enumerate",
            "--target",
            "decagons",
            "--k",
            "5",
        ],
        "",
    );
    assert_eq!(o.code, EXIT_PASS);
    assert!(o.stdout.contains("1 class"));
}

#[test]
fn render_is_deterministic() {
    let built = sixfold(&["family", "decagon-A"], "").stdout;
    let a = sixfold(&["render", "-", "integer", "--heat", "12"], &built);
    let b = sixfold(&["render", "-", "integer", "--heat", "12"], &built);
    assert_eq!(a.code, EXIT_PASS);
    assert!(a.stdout.starts_with("<svg"));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn classify_command() {
    let built = sixfold(&["family", "decagon-B"], "").stdout;
    let o = sixfold(&["classify", "-"], &built);
    assert_eq!(o.code, EXIT_PASS);
    assert!(o.stdout.contains("decagon-A = decagon-B"));
}
