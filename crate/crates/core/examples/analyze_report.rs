//! The JSON report printed by `quniv analyze`.

use quniv::lattice::lattice_from_json;
use quniv::report::{analyze_report, AnalyzeOptions};

pub fn main() -> quniv::Result<()> {
    let l = lattice_from_json(r#"{"field":{"kind":"imquad","d":-5},"gram":[["1+w","5/2"],["5/2","1-w"]]}"#)?;
    let opts = AnalyzeOptions { bound: 200, ..Default::default() };
    let r = analyze_report(&["analyze".into()], &l, &opts)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    Ok(())
}
