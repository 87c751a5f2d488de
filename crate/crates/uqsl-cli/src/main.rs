fn main() {
    // Placeholder during bring-up; replaced by the full CLI.
    eprintln!("uqsl CLI under construction");
    std::process::exit(2);
}
