//! Parsing, printing and error reporting for spec files.

use fds::specfile::SpecFile;

fn main() -> fds::Result<()> {
    let text = "\
# random braking for x1 only
field 3
vars 2
local 2 = table (x1) 0 2 1
choice 1 2/3 = x1 + x2
choice 1 1/3 = 2*x3^2
";
    match SpecFile::parse(text) {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    let fixed = text.replace("x3", "x1");
    let spec = SpecFile::parse(&fixed)?;
    print!("canonical form:\n{spec}");
    assert_eq!(SpecFile::parse(&spec.to_string())?, spec);
    let m = spec.model()?;
    println!(
        "model over GF({}) with {} variables",
        m.field().modulus(),
        m.n()
    );
    Ok(())
}
