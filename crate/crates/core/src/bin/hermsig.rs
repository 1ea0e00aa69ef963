use clap::Parser;
use hermsig::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let out = run(&cli.command);
    if out.code == 2 {
        eprint!("{}", out.output);
    } else {
        print!("{}", out.output);
    }
    std::process::exit(out.code);
}
