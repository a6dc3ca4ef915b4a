//! Built-in models.

use crate::error::Result;
use crate::plabic::{build_rectangles_model, PlabicModel};

/// The shark graph: a reduced plabic graph for the positroid of `Gr(2,5)`
/// obtained by removing `{4,5}`.
pub const SHARK: &str = "\
plabic v1
kn 2 5
node B1 black
node B2 white
node B3 white
node B4 black
node B5 white
edge e1 n:B5 b:1
edge e2 n:B4 b:2
edge e3 n:B3 b:3
edge e4 n:B2 b:4
edge e5 n:B2 b:5
edge e6 n:B1 n:B2
edge e7 n:B1 n:B5
edge e8 n:B1 n:B3
edge e9 n:B4 n:B5
edge e10 n:B3 n:B4
rot B1 e7 e6 e8
rot B2 e6 e5 e4
rot B3 e10 e8 e3
rot B4 e2 e9 e10
rot B5 e1 e7 e9
label e1,e5,e6,e7 12
label e1,e2,e9 23
label e10,e2,e3 34
label e3,e4,e6,e8 14
label e4,e5 15
label e10,e7,e8,e9 24
star e1,e5,e6,e7
";

pub fn shark() -> PlabicModel {
    PlabicModel::parse(SHARK).expect("built-in shark model is valid")
}

/// Resolves a model argument: `shark`, `rect:k,n`, or plabic text supplied by
/// the caller through `read_file`.
pub fn resolve_model(spec: &str, read_file: impl FnOnce(&str) -> std::io::Result<String>) -> Result<PlabicModel> {
    if spec == "shark" {
        return Ok(shark());
    }
    if let Some(kn) = spec.strip_prefix("rect:") {
        let (k, n) = crate::parse_kn(kn)?;
        return build_rectangles_model(k, n);
    }
    let text = read_file(spec).map_err(|e| crate::Error::Parameter(format!("cannot read {spec}: {e}")))?;
    PlabicModel::parse(&text)
}
