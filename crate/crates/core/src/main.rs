fn main() {
    std::process::exit(rpfif::render::cli_main(std::env::args_os()));
}
