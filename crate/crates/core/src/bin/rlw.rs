use std::io::Write;

fn main() {
    let r = rlw::cli::run(std::env::args_os());
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(r.output.as_bytes());
    let _ = out.flush();
    std::process::exit(r.code);
}
