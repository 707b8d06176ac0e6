use clap::Parser;
use finfty_cli::{run, Cli, Failure};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(r) => {
            print!("{}", r.render(cli.json));
            r.exit_code()
        }
        Err(Failure::Refuted(r)) => {
            print!("{}", r.render(cli.json));
            1
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            2
        }
    };
    std::process::exit(code);
}
