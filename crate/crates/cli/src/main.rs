use std::io::{stderr, stdout};
use std::panic;

fn main() {
    let code = panic::catch_unwind(|| {
        let mut out = stdout().lock();
        let mut err = stderr().lock();
        asmsym_cli::run(std::env::args_os(), &mut out, &mut err)
    })
    .unwrap_or(asmsym_cli::EXIT_INTERNAL);
    std::process::exit(code);
}
