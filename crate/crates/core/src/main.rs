use clap::Parser;

use expsum::cli::{execute, JobArgs, JobConfig, EXIT_INPUT_ERROR};

fn main() {
    let args = JobArgs::parse();
    let code = match JobConfig::resolve(args, |key| std::env::var(key).ok()) {
        Ok(job) => execute(&job),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT_ERROR
        }
    };
    std::process::exit(code);
}
