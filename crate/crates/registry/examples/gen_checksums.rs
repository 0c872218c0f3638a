fn main() {
    let reg = geoagent_registry::builtin_registry();
    print!("pub const NAME_CHECKSUMS: [u32; 40] = [");
    for (i, f) in reg.functions().iter().enumerate() {
        if i % 7 == 0 { print!("\n    "); }
        print!("{:#010x}, ", geoagent_registry::name_checksum(&f.name));
    }
    println!("\n];");
}
