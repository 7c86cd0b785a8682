fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = std::path::Path::new(&crate_dir).join("include").join("gallai.h");

    // Regenerate the committed header on every build. A generation failure is
    // downgraded to a warning so that consumers building from a source tarball
    // with the header already present are not blocked.
    match cbindgen::generate(&crate_dir) {
        Ok(bindings) => {
            bindings.write_to_file(&header);
        }
        Err(err) => {
            println!("cargo:warning=skipping C header generation: {err}");
        }
    }
}
