fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    let dir = std::env::var("CARGO_MANIFEST_DIR").expect("cargo sets the manifest dir");
    cbindgen::Builder::new()
        .with_crate(&dir)
        .with_language(cbindgen::Language::C)
        .with_include_guard("POLYFUN_H")
        .with_cpp_compat(true)
        .generate()
        .expect("Unable to generate bindings")
        .write_to_file(format!("{}/include/polyfun.h", dir));
}
