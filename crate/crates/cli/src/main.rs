use clap::Parser;
use permrep_cli::{run, verb_name, Cli, Format};

fn main() {
    let cli = Cli::parse();
    let code = match run(&cli) {
        Ok(out) => {
            println!("{}", out.render(verb_name(&cli.verb), &cli.global));
            out.code
        }
        Err(e) => {
            if cli.global.format == Format::Json {
                println!("{}", serde_json::json!({"schema": permrep_cli::SCHEMA, "exit": 1, "error": e.to_string()}));
            } else {
                eprintln!("error: {e}");
            }
            1
        }
    };
    std::process::exit(code);
}
