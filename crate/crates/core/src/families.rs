//! Named tree families with a fixed vertex labeling.
//!
//! Caterpillars are grown from the path `v_0 … v_d` (labels `0..=d`). Pendant
//! vertices follow in attachment order: for odd `d`, `a` leaves on
//! `v_{(d-1)/2}` then `b` leaves on `v_{(d+1)/2}`; for even `d`, `a`, `b`, `c`
//! leaves on `v_{d/2-1}`, `v_{d/2}`, `v_{d/2+1}`.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),
    #[error("cannot parse family `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidFamilyParameters(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// `K_{1,n-1}`, center labeled 0.
    Star {
        n: usize,
    },
    Path {
        n: usize,
    },
    /// `T_{n,d}^{a,b}` for odd `d >= 3`.
    OddCaterpillar {
        n: usize,
        d: usize,
        a: usize,
        b: usize,
    },
    /// `T_{n,d}^{a,b,c}` for even `d >= 4`.
    EvenCaterpillar {
        n: usize,
        d: usize,
        a: usize,
        b: usize,
        c: usize,
    },
}

impl FamilySpec {
    pub fn odd(d: usize, a: usize, b: usize) -> Self {
        Self::OddCaterpillar { n: d + 1 + a + b, d, a, b }
    }

    pub fn even(d: usize, a: usize, b: usize, c: usize) -> Self {
        Self::EvenCaterpillar { n: d + 1 + a + b + c, d, a, b, c }
    }

    pub fn order(&self) -> usize {
        match *self {
            Self::Star { n } | Self::Path { n } => n,
            Self::OddCaterpillar { n, .. } | Self::EvenCaterpillar { n, .. } => n,
        }
    }

    /// Diameter of the built tree.
    pub fn diameter(&self) -> usize {
        match *self {
            Self::Star { n } => n.min(3) - 1,
            Self::Path { n } => n - 1,
            Self::OddCaterpillar { d, .. } | Self::EvenCaterpillar { d, .. } => d,
        }
    }

    /// Checks the shape constraints without the `b >= a` / `c >= a` ordering.
    pub(crate) fn validate_shape(&self) -> Result<(), FamilyError> {
        match *self {
            Self::Star { n } if n < 2 => Err(invalid(format!("star needs n >= 2, got {n}"))),
            Self::Path { n } if n < 1 => Err(invalid("path needs n >= 1")),
            Self::Star { .. } | Self::Path { .. } => Ok(()),
            Self::OddCaterpillar { n, d, a, b } => {
                if d < 3 || d % 2 == 0 {
                    return Err(invalid(format!("odd caterpillar needs odd d >= 3, got {d}")));
                }
                if d + 1 + a + b != n {
                    return Err(invalid(format!("a + b = {} but n - d - 1 = {}", a + b, n as i64 - d as i64 - 1)));
                }
                Ok(())
            }
            Self::EvenCaterpillar { n, d, a, b, c } => {
                if d < 4 || d % 2 == 1 {
                    return Err(invalid(format!("even caterpillar needs even d >= 4, got {d}")));
                }
                if d + 1 + a + b + c != n {
                    return Err(invalid(format!(
                        "a + b + c = {} but n - d - 1 = {}",
                        a + b + c,
                        n as i64 - d as i64 - 1
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn validate(&self) -> Result<(), FamilyError> {
        self.validate_shape()?;
        match *self {
            Self::OddCaterpillar { a, b, .. } if b < a => Err(invalid(format!("requires b >= a, got a={a}, b={b}"))),
            Self::EvenCaterpillar { a, c, .. } if c < a => Err(invalid(format!("requires c >= a, got a={a}, c={c}"))),
            _ => Ok(()),
        }
    }

    /// Path vertices that carry pendants, paired with their pendant counts.
    fn attachments(&self) -> Vec<(usize, usize)> {
        match *self {
            Self::OddCaterpillar { d, a, b, .. } => vec![((d - 1) / 2, a), ((d + 1) / 2, b)],
            Self::EvenCaterpillar { d, a, b, c, .. } => vec![(d / 2 - 1, a), (d / 2, b), (d / 2 + 1, c)],
            _ => Vec::new(),
        }
    }

    /// Labels of the pendants attached at the `slot`-th center (0-based).
    pub fn pendant_labels(&self, slot: usize) -> Range<usize> {
        let att = self.attachments();
        let mut start = self.diameter() + 1;
        for &(_, k) in &att[..slot] {
            start += k;
        }
        start..start + att[slot].1
    }

    pub fn build(&self) -> Result<Graph, FamilyError> {
        self.validate()?;
        Ok(self.build_graph())
    }

    /// Builds without the `b >= a` / `c >= a` convention, so mirrored
    /// parameters (`T^{a,b}` vs `T^{b,a}`) can be compared.
    pub fn build_unchecked(&self) -> Result<Graph, FamilyError> {
        self.validate_shape()?;
        Ok(self.build_graph())
    }

    fn build_graph(&self) -> Graph {
        let n = self.order();
        let mut pairs = Vec::with_capacity(n.saturating_sub(1));
        match *self {
            Self::Star { n } => pairs.extend((1..n).map(|i| (0, i))),
            Self::Path { n } => pairs.extend((1..n).map(|i| (i - 1, i))),
            Self::OddCaterpillar { d, .. } | Self::EvenCaterpillar { d, .. } => {
                pairs.extend((1..=d).map(|i| (i - 1, i)));
                let mut next = d + 1;
                for (center, k) in self.attachments() {
                    pairs.extend((next..next + k).map(|leaf| (center, leaf)));
                    next += k;
                }
            }
        }
        Graph::from_edge_list(n, &pairs).expect("family constructors produce trees")
    }
}

/// `T_{n,3}^{a,b}`.
pub fn double_star(n: usize, a: usize, b: usize) -> Result<Graph, FamilyError> {
    if n < 4 {
        return Err(invalid(format!("double star needs n >= 4, got {n}")));
    }
    FamilySpec::OddCaterpillar { n, d: 3, a, b }.build()
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::Star { n } => write!(f, "star:n={n}"),
            Self::Path { n } => write!(f, "path:n={n}"),
            Self::OddCaterpillar { n, d, a, b } => write!(f, "odd:n={n},d={d},a={a},b={b}"),
            Self::EvenCaterpillar { n, d, a, b, c } => write!(f, "even:n={n},d={d},a={a},b={b},c={c}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    /// Parses `star:n=5`, `path:n=7`, `odd:n=8,d=5,a=1,b=1`, `even:n=9,d=6,a=1,b=0,c=1`.
    /// The result is validated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let perr = |reason: String| FamilyError::Parse { input: s.to_string(), reason };
        let (kind, rest) = s.split_once(':').ok_or_else(|| perr("expected `<kind>:key=value,...`".into()))?;
        let mut vals: [Option<usize>; 5] = [None; 5];
        const KEYS: [&str; 5] = ["n", "d", "a", "b", "c"];
        for kv in rest.split(',').filter(|t| !t.is_empty()) {
            let (k, v) = kv.split_once('=').ok_or_else(|| perr(format!("expected key=value, got `{kv}`")))?;
            let slot =
                KEYS.iter().position(|&key| key == k.trim()).ok_or_else(|| perr(format!("unknown parameter `{k}`")))?;
            let v = v.trim().parse::<usize>().map_err(|e| perr(format!("parameter `{k}`: {e}")))?;
            if vals[slot].replace(v).is_some() {
                return Err(perr(format!("parameter `{k}` given twice")));
            }
        }
        let allowed: &[usize] = match kind.trim() {
            "star" | "path" => &[0],
            "odd" => &[0, 1, 2, 3],
            "even" => &[0, 1, 2, 3, 4],
            other => return Err(perr(format!("unknown family `{other}`"))),
        };
        for (i, v) in vals.iter().enumerate() {
            if v.is_some() && !allowed.contains(&i) {
                return Err(perr(format!("parameter `{}` not used by `{}`", KEYS[i], kind.trim())));
            }
        }
        let need = |i: usize| vals[i].ok_or_else(|| perr(format!("missing parameter `{}`", KEYS[i])));
        let spec = match kind.trim() {
            "star" => Self::Star { n: need(0)? },
            "path" => Self::Path { n: need(0)? },
            "odd" => Self::OddCaterpillar { n: need(0)?, d: need(1)?, a: need(2)?, b: need(3)? },
            _ => Self::EvenCaterpillar { n: need(0)?, d: need(1)?, a: need(2)?, b: need(3)?, c: need(4)? },
        };
        spec.validate()?;
        Ok(spec)
    }
}
