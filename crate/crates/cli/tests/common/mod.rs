#![allow(dead_code)]

use std::path::PathBuf;

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn data_json(name: &str) -> serde_json::Value {
    serde_json::from_slice(&std::fs::read(data(name)).unwrap()).unwrap()
}

/// Runs the command line in process: (exit code, stdout, stderr).
pub fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("clusterlab").chain(args.iter().copied());
    let code = clusterlab_cli::cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn run_on(sub: &[&str], file: &str, rest: &[&str]) -> (i32, String, String) {
    let path = data(file);
    let mut args: Vec<&str> = sub.to_vec();
    args.push(path.to_str().unwrap());
    args.extend_from_slice(rest);
    run(&args)
}
