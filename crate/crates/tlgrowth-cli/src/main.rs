use std::io::Write;

fn main() {
    let mut stdout = std::io::stdout().lock();
    let code = tlgrowth_cli::run_with_output(std::env::args_os(), &mut stdout);
    let _ = stdout.flush();
    std::process::exit(code);
}
