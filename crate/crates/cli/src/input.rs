use std::fs;

use clap::{Args, ValueEnum};
use quiverlab::{ExchangeMatrix, Quiver};

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Orientation {
    /// `i+1 -> i` along the path
    Linear,
    /// `2 -> 1 <- 3`, continued by `i+1 -> i`
    Fan,
}

/// Where the quiver comes from.
#[derive(Debug, Args)]
pub struct QuiverArgs {
    /// Quiver JSON `{"n":3,"arrows":[[2,1],[3,1]]}`, an exchange matrix as a
    /// JSON array of rows, or `@path` to read either from a file
    #[arg(long, conflicts_with_all = ["kind", "orientation"], required_unless_present = "kind")]
    pub quiver: Option<String>,

    /// Named quiver: `A<n>` or `kronecker`
    #[arg(long = "type", value_name = "NAME", value_parser = parse_kind)]
    pub kind: Option<Kind>,

    /// `linear`, `fan`, or an arrow list such as `2>1,3>1`
    #[arg(long, requires = "kind")]
    pub orientation: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    A(usize),
    Kronecker,
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    let lower = s.to_ascii_lowercase();
    if lower == "kronecker" {
        return Ok(Kind::Kronecker);
    }
    match lower.strip_prefix('a').map(str::parse::<usize>) {
        Some(Ok(n)) if n >= 1 => Ok(Kind::A(n)),
        _ => Err(format!("expected A<n> with n >= 1 or kronecker, got `{s}`")),
    }
}

/// A resolved quiver, remembering whether it arrived as a matrix.
pub struct Input {
    pub quiver: Quiver,
    pub matrix: bool,
}

impl QuiverArgs {
    pub fn resolve(&self) -> Result<Input, Failure> {
        if let Some(text) = &self.quiver {
            return from_text(text);
        }
        let kind = self.kind.ok_or_else(|| Failure::Usage("no quiver given".into()))?;
        let quiver = match (kind, self.orientation.as_deref()) {
            (Kind::Kronecker, None) => Quiver::kronecker(),
            (Kind::Kronecker, Some(_)) => {
                return Err(Failure::Usage("the Kronecker quiver takes no orientation".into()))
            }
            (Kind::A(n), None) => Quiver::linear_a(n),
            (Kind::A(n), Some(o)) => match Orientation::from_str(o, true) {
                Ok(Orientation::Linear) => Quiver::linear_a(n),
                Ok(Orientation::Fan) => {
                    let arrows: Vec<(usize, usize)> = (2..=n)
                        .map(|i| if i <= 3 { (i, 1) } else { (i, i - 1) })
                        .collect();
                    Quiver::from_arrows(n, &arrows).map_err(Failure::domain)?
                }
                Err(_) => Quiver::from_arrows(n, &arrow_list(o)?).map_err(Failure::domain)?,
            },
        };
        Ok(Input { quiver, matrix: false })
    }
}

fn from_text(text: &str) -> Result<Input, Failure> {
    let body = match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::Domain(format!("{path}: {e}")))?,
        None => text.to_string(),
    };
    if body.trim_start().starts_with('[') {
        let rows: Vec<Vec<i64>> =
            serde_json::from_str(&body).map_err(|e| Failure::Domain(format!("matrix JSON: {e}")))?;
        let b = ExchangeMatrix::new(rows).map_err(Failure::domain)?;
        Ok(Input {
            quiver: b.to_quiver(),
            matrix: true,
        })
    } else {
        Ok(Input {
            quiver: Quiver::from_json(&body).map_err(Failure::domain)?,
            matrix: false,
        })
    }
}

fn arrow_list(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let bad = || Failure::Usage(format!("orientation `{text}` is not linear, fan or a list like 2>1,3>1"));
    text.split(',')
        .map(|item| {
            let item = item.trim();
            let (s, t) = item
                .split_once("->")
                .or_else(|| item.split_once('>'))
                .ok_or_else(bad)?;
            Ok((s.trim().parse().map_err(|_| bad())?, t.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}
