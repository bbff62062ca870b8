use std::io::Write;

fn main() {
    let outcome = homaloid_cli::run(std::env::args());
    print!("{}", outcome.stdout);
    std::io::stdout().flush().ok();
    eprint!("{}", outcome.stderr);
    std::process::exit(outcome.code);
}
