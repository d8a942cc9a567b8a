use std::io::Write;

fn main() {
    let (code, out, err) = superlie::cli::run(std::env::args());
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stderr.write_all(err.as_bytes());
    let _ = stdout.flush();
    let _ = stderr.flush();
    std::process::exit(code);
}
