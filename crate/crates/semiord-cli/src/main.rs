use std::process;

fn main() {
    let code = semiord_cli::run(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    );
    process::exit(code);
}
