use std::io::Write;

fn main() {
    let out = afinv::cli::run(std::env::args_os());
    std::io::stdout().write_all(out.stdout.as_bytes()).expect("stdout is writable");
    std::io::stderr().write_all(out.stderr.as_bytes()).expect("stderr is writable");
    std::process::exit(out.code);
}
