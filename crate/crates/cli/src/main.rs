use clap::Parser;

fn main() {
    let cli = bochner_cli::Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match bochner_cli::run(cli, &mut stdout) {
        Ok(code) => std::process::exit(code),
        Err(f) => {
            eprintln!("bk: {f}");
            std::process::exit(f.code);
        }
    }
}
