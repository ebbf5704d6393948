//! JSON file format for formal group laws.
//!
//! ```json
//! {"name": "multiplicative", "dim": 1, "trunc": 4, "tail": "exact",
//!  "components": [[[[1, 0], "1"], [[0, 1], "1"], [[1, 1], "1"]]]}
//! ```
//!
//! Each component lists `[exponents over X then Y, "num/den"]` pairs.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fgl::{FormalGroupLaw, TailModel};
use crate::rational::{format_rational, parse_rational};
use crate::series::{MultiIndex, TruncatedSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FglFile {
    #[serde(default = "default_name")]
    pub name: String,
    pub dim: usize,
    pub trunc: u32,
    #[serde(default = "default_tail")]
    pub tail: TailModel,
    pub components: Vec<Vec<(Vec<u32>, String)>>,
}

fn default_name() -> String {
    "custom".into()
}

fn default_tail() -> TailModel {
    TailModel::Integral
}

impl FglFile {
    pub fn from_law(g: &FormalGroupLaw) -> Self {
        Self {
            name: g.name().to_string(),
            dim: g.dim(),
            trunc: g.trunc(),
            tail: g.tail(),
            components: g
                .components()
                .iter()
                .map(|c| {
                    c.terms()
                        .map(|(i, x)| (i.exponents().to_vec(), format_rational(x)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Builds the law; shape problems and invalid rationals are reported,
    /// the axioms are not checked here.
    pub fn to_law(&self) -> Result<FormalGroupLaw> {
        let n = 2 * self.dim;
        let components = self
            .components
            .iter()
            .map(|terms| {
                let parsed = terms
                    .iter()
                    .map(|(e, c)| {
                        if e.len() != n {
                            return Err(Error::Dimension(format!(
                                "exponent vector {e:?} must have length {n}"
                            )));
                        }
                        Ok((MultiIndex::new(e.clone()), parse_rational(c)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                TruncatedSeries::from_terms(n, self.trunc, parsed)
            })
            .collect::<Result<Vec<_>>>()?;
        FormalGroupLaw::new(self.name.clone(), self.dim, self.trunc, components, self.tail)
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    start + column.saturating_sub(1)
}

pub fn parse_fgl(text: &str) -> Result<FormalGroupLaw> {
    let file: FglFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        position: byte_offset(text, e.line(), e.column()),
        message: e.to_string(),
    })?;
    file.to_law()
}

pub fn write_fgl(g: &FormalGroupLaw) -> String {
    serde_json::to_string_pretty(&FglFile::from_law(g)).expect("plain data serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgl::Builtin;

    #[test]
    fn round_trip() {
        for b in [Builtin::Multiplicative, Builtin::Heisenberg, Builtin::AxPlusB, Builtin::Additive(3)] {
            let g = FormalGroupLaw::builtin(b, 5);
            let text = write_fgl(&g);
            let back = parse_fgl(&text).unwrap();
            assert_eq!(back.components(), g.components());
            assert_eq!(back.tail(), g.tail());
            assert_eq!(write_fgl(&back), text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_fgl("{\"dim\": 1,\n \"trunc\": x}").unwrap_err();
        assert!(matches!(e, Error::Parse { position: 21, .. }), "{e:?}");
        let e = parse_fgl(r#"{"dim": 1, "trunc": 3, "components": [[[[1], "1"]]]}"#).unwrap_err();
        assert!(matches!(e, Error::Dimension(_)));
        let e = parse_fgl(r#"{"dim": 1, "trunc": 3, "components": [[[[1, 0], "1/0"]]]}"#).unwrap_err();
        assert!(matches!(e, Error::Parse { .. }));
    }
}
