//! `ave gen`: write a generated problem to disk.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ave_core::io::{save_matrix_market, save_vector_text};
use ave_core::problems::{build_matrix, build_problem, ConvDiffSpec};
use serde_json::json;
use sha2::{Digest, Sha256};

const MATRIX_FILE: &str = "A.mtx";
const RHS_FILE: &str = "b.txt";
const EXACT_FILE: &str = "x_exact.txt";
const MANIFEST_FILE: &str = "manifest.json";

fn sha256_hex(path: &Path) -> Result<String> {
    let bytes = fs::read(path)?;
    Ok(format!("{:x}", Sha256::digest(&bytes)))
}

pub fn run(m: usize, q: f64, p: f64, out: &Path) -> Result<()> {
    let spec = ConvDiffSpec::new(m, q, p)?;
    let a = build_matrix(&spec);
    let problem = build_problem(&spec)?;

    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    save_matrix_market(&a, out.join(MATRIX_FILE))?;
    save_vector_text(problem.rhs(), out.join(RHS_FILE))?;
    save_vector_text(
        problem.exact().expect("generated problems carry x*"),
        out.join(EXACT_FILE),
    )?;

    let mut checksums = serde_json::Map::new();
    for file in [MATRIX_FILE, RHS_FILE, EXACT_FILE] {
        checksums.insert(file.to_string(), json!(sha256_hex(&out.join(file))?));
    }
    let manifest = json!({
        "spec": spec,
        "n": spec.n(),
        "nnz": a.nnz(),
        "files": {
            "matrix": MATRIX_FILE,
            "rhs": RHS_FILE,
            "exact": EXACT_FILE,
        },
        "sha256": checksums,
    });
    fs::write(
        out.join(MANIFEST_FILE),
        serde_json::to_string_pretty(&manifest)?,
    )?;

    println!(
        "wrote {} (n = {}, nnz = {}) to {}",
        MATRIX_FILE,
        spec.n(),
        a.nnz(),
        out.display()
    );
    Ok(())
}
