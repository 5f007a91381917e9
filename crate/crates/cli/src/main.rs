use std::io::Write;

fn main() {
    let out = wobetti_cli::run_with(std::env::args_os(), &mut std::io::stdin());
    print!("{}", out.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{}", out.stderr);
    std::process::exit(out.code);
}
