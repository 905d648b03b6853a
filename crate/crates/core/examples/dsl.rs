//! Run a program in the text language and print its JSON report.

use leafnorm::dsl::{execute, parse, Format};

const PROGRAM: &str = "
chart { base:[u, v]; fiber:[y1, y2, y3]; params:[r]; }
let pi = sphere_so3(true);
check jacobi(pi);
decompose(pi);
jet(pi, 1);
moser(pi);
monodromy(sphere_periods);
int_identity(1/(1+r^2); 1, r/(1+r^2));
";

fn main() {
    let program = match parse(PROGRAM) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    print!("{program}");
    let report = execute(&program);
    println!("{}", report.emit(Format::Text));
    println!("{}", report.emit(Format::Json));
}
