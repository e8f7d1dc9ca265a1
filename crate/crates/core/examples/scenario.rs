//! Run a scenario from TOML text, as the command-line tool does.

use biharm::error::Result;
use biharm::scenario::{run, Command, Scenario};

const CONFIG: &str = r#"
name = "example-kite"
wavenumber = 1.0
n = 64

[shape]
kind = "kite"
scale = 1.0

[incident]
kind = "point_source_bi"
z = [-3.0, 1.0]

[[checks]]
check = "farfield_equivalence"

[[checks]]
check = "null_field"
"#;

fn main() -> Result<()> {
    let scenario = Scenario::from_toml(CONFIG, "inline")?;
    let out = std::env::temp_dir().join("biharm-example-scenario");
    let report = run(&scenario, Command::Verify, &out)?;
    for check in &report.checks {
        println!("{}", check.summary());
    }
    println!("all pass: {}, reports in {}", report.all_pass, out.display());
    Ok(())
}
