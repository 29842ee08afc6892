use std::env;
use std::path::PathBuf;

fn main() {
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").expect("manifest dir"));
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let config = cbindgen::Config::from_file(crate_dir.join("cbindgen.toml"))
        .expect("cbindgen.toml parses");
    let bindings = cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation succeeds");

    let out = PathBuf::from(env::var("OUT_DIR").expect("out dir")).join("prcldpc.h");
    bindings.write_to_file(&out);

    // keep the committed copy in sync
    let committed = crate_dir.join("include").join("prcldpc.h");
    std::fs::create_dir_all(committed.parent().expect("include dir")).expect("mkdir include");
    let fresh = std::fs::read(&out).expect("generated header readable");
    let stale = std::fs::read(&committed).ok();
    if stale.as_deref() != Some(fresh.as_slice()) {
        std::fs::write(&committed, &fresh).expect("header copy writable");
    }
}
