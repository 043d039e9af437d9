//! The flat `key=value` group spec format shared by the CLI and the C API.
//!
//! ```text
//! # GL_3 with the standard Frobenius
//! family=GL
//! rank=3
//! sigma=identity
//! mu=1,0,0
//! ```
//!
//! `sigma` is `identity`, `opposition`, or `perm:i,j,...` (1-based images of
//! the simple roots). `mu` and `b0` are written in matrix coordinates; for
//! `SL_n` they are sum-zero vectors in `Z^n`. Optional keys for `hncheck`:
//! `b0=...`, `b0_word=1,2` (simple reflections, 1-based) and
//! `levi=torus|centralizer|cent:v1,v2,...`.

use crate::affine::{AffineElement, GroupContext};
use crate::error::{Error, Result};
use crate::rootdata::{Cochar, Family, GroupSpec, SigmaSpec};
use std::collections::HashMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LeviChoice {
    Torus,
    /// Centralizer of `μ̄`.
    Centralizer,
    /// Centralizer of a given cocharacter (matrix coordinates).
    CentralizerOf(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecFile {
    pub group: GroupSpec,
    mu: Option<(usize, Vec<i64>)>,
    b0: Option<(usize, Vec<i64>)>,
    b0_word: Option<(usize, Vec<usize>)>,
    pub levi: LeviChoice,
    sigma_line: usize,
}

fn parse_ints(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| {
            x.trim().parse::<i64>().map_err(|_| Error::Parse {
                line,
                msg: format!("`{}` is not an integer", x.trim()),
            })
        })
        .collect()
}

fn parse_indices(line: usize, s: &str) -> Result<Vec<usize>> {
    parse_ints(line, s)?
        .into_iter()
        .map(|x| {
            if x >= 1 {
                Ok(x as usize - 1)
            } else {
                Err(Error::Parse {
                    line,
                    msg: format!("index {x} must be at least 1"),
                })
            }
        })
        .collect()
}

fn parse_sigma(line: usize, s: &str) -> Result<SigmaSpec> {
    match s {
        "identity" | "id" => Ok(SigmaSpec::Identity),
        "opposition" => Ok(SigmaSpec::Opposition),
        _ => match s.strip_prefix("perm:") {
            Some(rest) => Ok(SigmaSpec::Perm(parse_indices(line, rest)?)),
            None => Err(Error::Parse {
                line,
                msg: format!("sigma must be identity, opposition or perm:..., got `{s}`"),
            }),
        },
    }
}

pub fn parse_spec(text: &str) -> Result<SpecFile> {
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut family = None;
    let mut rank = None;
    let mut sigma = SigmaSpec::Identity;
    let (mut mu, mut b0, mut b0_word) = (None, None, None);
    let mut levi = LeviChoice::Centralizer;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Parse {
                line,
                msg: format!("expected key=value, got `{content}`"),
            });
        };
        let (key, value) = (key.trim().to_ascii_lowercase(), value.trim());
        if let Some(prev) = seen.insert(key.clone(), line) {
            return Err(Error::Parse {
                line,
                msg: format!("`{key}` already set on line {prev}"),
            });
        }
        match key.as_str() {
            "family" => {
                family = Some(
                    value
                        .parse::<Family>()
                        .map_err(|msg| Error::Parse { line, msg })?,
                )
            }
            "rank" => {
                rank = Some(value.parse::<usize>().map_err(|_| Error::Parse {
                    line,
                    msg: format!("rank must be a positive integer, got `{value}`"),
                })?)
            }
            "sigma" => sigma = parse_sigma(line, value)?,
            "mu" => mu = Some((line, parse_ints(line, value)?)),
            "b0" => b0 = Some((line, parse_ints(line, value)?)),
            "b0_word" => {
                b0_word = Some((
                    line,
                    if value.is_empty() {
                        vec![]
                    } else {
                        parse_indices(line, value)?
                    },
                ))
            }
            "levi" => {
                levi = match value {
                    "torus" => LeviChoice::Torus,
                    "centralizer" => LeviChoice::Centralizer,
                    v => match v.strip_prefix("cent:") {
                        Some(rest) => LeviChoice::CentralizerOf(parse_ints(line, rest)?),
                        None => {
                            return Err(Error::Parse {
                                line,
                                msg: format!(
                                    "levi must be torus, centralizer or cent:..., got `{v}`"
                                ),
                            })
                        }
                    },
                }
            }
            other => {
                return Err(Error::Parse {
                    line,
                    msg: format!("unknown key `{other}`"),
                })
            }
        }
    }
    let end = last_line.max(1);
    let family = family.ok_or(Error::Parse {
        line: end,
        msg: "missing `family`".into(),
    })?;
    let rank = rank.ok_or(Error::Parse {
        line: end,
        msg: "missing `rank`".into(),
    })?;
    let group = GroupSpec::new(family, rank).with_sigma(sigma);
    group.validate().map_err(|e| Error::Parse {
        line: seen.get("rank").copied().unwrap_or(end),
        msg: e.to_string(),
    })?;
    let sigma_line = seen
        .get("sigma")
        .or(seen.get("rank"))
        .copied()
        .unwrap_or(end);
    Ok(SpecFile {
        group,
        mu,
        b0,
        b0_word,
        levi,
        sigma_line,
    })
}

/// A parsed spec bound to its group.
pub struct Loaded {
    pub spec: SpecFile,
    pub ctx: GroupContext,
}

impl SpecFile {
    pub fn load(self) -> Result<Loaded> {
        let line = self.sigma_line;
        let ctx = GroupContext::new(&self.group).map_err(|e| match e {
            Error::SigmaNotAutomorphism(_) | Error::InvalidSpec(_) => Error::Parse {
                line,
                msg: e.to_string(),
            },
            other => other,
        })?;
        Ok(Loaded { spec: self, ctx })
    }

    /// `μ` in matrix coordinates, as written.
    pub fn mu_raw(&self) -> Option<&[i64]> {
        self.mu.as_ref().map(|(_, v)| v.as_slice())
    }
}

impl Loaded {
    fn convert(&self, entry: &Option<(usize, Vec<i64>)>, name: &str) -> Result<Option<Cochar>> {
        let Some((line, v)) = entry else {
            return Ok(None);
        };
        let d = self.ctx.datum();
        let expected = match self.spec.group.family {
            Family::SL => self.spec.group.rank,
            _ => d.cochar_rank,
        };
        if v.len() != expected {
            return Err(Error::Parse {
                line: *line,
                msg: format!("{name} needs {expected} entries, got {}", v.len()),
            });
        }
        d.cochar_from_matrix_coords(v)
            .map(Some)
            .map_err(|e| Error::Parse {
                line: *line,
                msg: e.to_string(),
            })
    }

    /// `μ` in datum coordinates; it must be present and dominant.
    pub fn mu(&self) -> Result<Cochar> {
        let mu = self.convert(&self.spec.mu, "mu")?.ok_or(Error::Parse {
            line: 1,
            msg: "missing `mu`".into(),
        })?;
        if !self.ctx.datum().is_dominant_int(&mu) {
            return Err(Error::NotDominant(crate::lattice::fmt_int_vec(
                self.spec.mu_raw().unwrap_or(&[]),
            )));
        }
        Ok(mu)
    }

    /// `b0` from the spec, defaulting to the translation by `μ`.
    pub fn b0(&self) -> Result<AffineElement> {
        let translation = match self.convert(&self.spec.b0, "b0")? {
            Some(v) => v,
            None => self.mu()?,
        };
        let g = &self.ctx.weyl;
        let w = match &self.spec.b0_word {
            None => g.identity(),
            Some((line, word)) => {
                if let Some(&s) = word.iter().find(|&&s| s >= g.rank()) {
                    return Err(Error::Parse {
                        line: *line,
                        msg: format!("no simple reflection s{}", s + 1),
                    });
                }
                g.from_word(word)
            }
        };
        Ok(AffineElement::new(g, translation, w))
    }

    pub fn levi_vector(&self) -> Result<Option<Cochar>> {
        match &self.spec.levi {
            LeviChoice::CentralizerOf(v) => {
                let line = 1;
                self.convert(&Some((line, v.clone())), "levi vector")
            }
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_basic_spec() {
        let s =
            parse_spec("# comment\nfamily=GL\nrank=3\n\nsigma=identity\nmu=1,0,0  # trailing\n")
                .unwrap();
        assert_eq!(s.group, GroupSpec::new(Family::GL, 3));
        let l = s.load().unwrap();
        assert_eq!(l.mu().unwrap(), vec![1, 0, 0]);
    }

    #[test]
    fn sigma_forms() {
        let s = parse_spec("family=GL\nrank=3\nsigma=perm:2,1\n").unwrap();
        assert_eq!(s.group.sigma, SigmaSpec::Perm(vec![1, 0]));
        let s = parse_spec("family=GL\nrank=2\nsigma=opposition\n").unwrap();
        assert_eq!(s.group.sigma, SigmaSpec::Opposition);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_spec("family=GL\nrank=three\n").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                msg: "rank must be a positive integer, got `three`".into()
            }
        );
        let e = parse_spec("family=GL\nrank=2\nmu=1,x\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_spec("family=GL\nfamily=SL\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_spec("family=GL\nrank=2\nbogus\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_spec("family=GL\nrank=2\nmu=1,0,0\n")
            .unwrap()
            .load()
            .unwrap()
            .mu()
            .unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }));
        let e = parse_spec("family=GL\nrank=2\nmu=0,1\n")
            .unwrap()
            .load()
            .unwrap()
            .mu()
            .unwrap_err();
        assert!(e.to_string().contains("not dominant"));
        let e = parse_spec("family=Sp\nrank=3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn sl_mu_in_matrix_coordinates() {
        let l = parse_spec("family=SL\nrank=3\nmu=1,0,-1\n")
            .unwrap()
            .load()
            .unwrap();
        assert_eq!(l.mu().unwrap(), vec![1, 1]);
        let l = parse_spec("family=SL\nrank=3\nmu=1,0,0\n")
            .unwrap()
            .load()
            .unwrap();
        assert!(l.mu().is_err());
    }

    #[test]
    fn b0_defaults_to_mu() {
        let l = parse_spec("family=GL\nrank=2\nmu=1,0\n")
            .unwrap()
            .load()
            .unwrap();
        assert_eq!(l.b0().unwrap().translation, vec![1, 0]);
        let l = parse_spec("family=GL\nrank=2\nmu=1,0\nb0=0,1\nb0_word=1\n")
            .unwrap()
            .load()
            .unwrap();
        let b = l.b0().unwrap();
        assert_eq!(b.translation, vec![0, 1]);
        assert_eq!(b.finite.length, 1);
    }
}
