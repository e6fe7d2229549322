//! Drives the command-line interface in-process with descriptor files
//! written to a temporary directory.

use smooth_renyi::cli::run_cli;

fn main() -> std::io::Result<()> {
    let dir = std::env::temp_dir().join(format!("smooth-renyi-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let path = |name: &str| dir.join(name).display().to_string();

    std::fs::write(path("d.json"), r#"{"p": [0.5, 0.25, 0.25]}"#)?;
    std::fs::write(path("chain.json"), r#"{"T": [[0.9, 0.1], [0.2, 0.8]]}"#)?;
    std::fs::write(
        path("cc.json"),
        r#"{"kind": "cc", "chain": {"T": [[0.9, 0.1], [0.2, 0.8]]},
            "unitary": {"re": [[0.7071067811865476, 0.7071067811865476],
                               [0.7071067811865476, -0.7071067811865476]]}}"#,
    )?;
    std::fs::write(path("bad.json"), r#"{"p": [0.5, "half"]}"#)?;

    let runs: Vec<Vec<String>> = vec![
        vec!["smooth".into(), "--dist".into(), path("d.json"), "--alpha".into(), "inf".into(), "--eps".into(), "0.25".into()],
        vec!["rate".into(), "--chain".into(), path("chain.json"), "--alpha".into(), "0".into(), "--eps".into(), "0.05".into(), "--n".into(), "64,256".into()],
        vec!["quantum-rate".into(), "--source".into(), path("cc.json"), "--alpha".into(), "inf".into(), "--eps".into(), "0.05".into(), "--n".into(), "2,4,6".into()],
        vec!["entropy".into(), "--dist".into(), path("bad.json"), "--alpha".into(), "2".into()],
    ];
    for args in runs {
        println!("$ smooth-renyi {}", args.join(" "));
        let code = run_cli(std::iter::once("smooth-renyi".to_string()).chain(args));
        println!("[exit {code}]\n");
    }
    std::fs::remove_dir_all(&dir)
}
