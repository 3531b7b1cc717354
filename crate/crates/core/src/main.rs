use std::io::Write;

fn main() {
    let (code, out) = ilt::cli::run(std::env::args_os());
    if !out.is_empty() {
        // a closed pipe is not an error worth reporting
        let _ = writeln!(std::io::stdout(), "{out}");
    }
    std::process::exit(code);
}
