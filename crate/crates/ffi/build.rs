use std::env;
use std::path::PathBuf;

fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    let crate_dir = PathBuf::from(env::var("CARGO_MANIFEST_DIR").unwrap());
    let mut config = cbindgen::Config::default();
    config.enumeration.rename_variants = cbindgen::RenameRule::ScreamingSnakeCase;
    config.enumeration.prefix_with_name = true;
    cbindgen::Builder::new()
        .with_config(config)
        .with_crate(&crate_dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("CTRS_H")
        .with_cpp_compat(true)
        .with_documentation(true)
        .with_sys_include("stddef.h")
        .with_sys_include("stdint.h")
        .with_no_includes()
        .generate()
        .expect("unable to generate C bindings")
        .write_to_file(crate_dir.join("include/ctrs.h"));
}
