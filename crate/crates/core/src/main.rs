use std::io::Write;

use clap::Parser;

use monoforge::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let code = run(cli, &mut out, &mut std::io::stderr());
    let _ = out.flush();
    std::process::exit(code);
}
