//! One-token group identifiers: `z:<n>`, `s:<m>`, `a:<m>`, `sl2:<p>`,
//! `psl2:<p>`, `file:<path>`.

use crate::error::{Error, Result};
use crate::group::{
    build_alternating, build_cyclic, build_psl2, build_sl2, build_symmetric, load_cayley_table,
    FiniteGroup,
};

/// A catalog family with its accepted parameter range.
pub struct Family {
    pub prefix: &'static str,
    pub description: &'static str,
    pub parameters: &'static str,
}

pub const FAMILIES: &[Family] = &[
    Family {
        prefix: "z",
        description: "cyclic group Z_n",
        parameters: "n in 1..=5040",
    },
    Family {
        prefix: "s",
        description: "symmetric group S_m",
        parameters: "m in 2..=7",
    },
    Family {
        prefix: "a",
        description: "alternating group A_m",
        parameters: "m in 2..=7",
    },
    Family {
        prefix: "sl2",
        description: "special linear group SL(2,p)",
        parameters: "p in {3,5,7,11,13}",
    },
    Family {
        prefix: "psl2",
        description: "projective special linear group PSL(2,p)",
        parameters: "p in {3,5,7,11,13}",
    },
    Family {
        prefix: "file",
        description: "Cayley table file",
        parameters: "path",
    },
];

/// Builds the group named by `id`.
pub fn resolve(id: &str) -> Result<FiniteGroup> {
    let (prefix, arg) = id
        .split_once(':')
        .ok_or_else(|| Error::UnknownGroup(id.to_string()))?;
    if prefix == "file" {
        let text = std::fs::read_to_string(arg)?;
        return load_cayley_table(id, &text);
    }
    let param: usize = arg
        .parse()
        .map_err(|_| Error::UnknownGroup(id.to_string()))?;
    match prefix {
        "z" => build_cyclic(param),
        "s" => build_symmetric(param),
        "a" => build_alternating(param),
        "sl2" => build_sl2(param),
        "psl2" => build_psl2(param),
        _ => Err(Error::UnknownGroup(id.to_string())),
    }
}
