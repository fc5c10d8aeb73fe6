use std::io::Write;

fn main() {
    if let Some(n) = std::env::var("FMZV_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        if n > 0 {
            fmzv::par::init_threads(n);
        }
    }
    let outcome = fmzv::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    std::process::exit(outcome.code);
}
