use std::io::Write;

fn main() {
    let outcome = cover_games::cli::run(std::env::args_os());
    // A closed pipe downstream is not an error of the run.
    let _ = std::io::stdout()
        .write_all(outcome.stdout.as_bytes())
        .and_then(|_| std::io::stdout().flush());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
