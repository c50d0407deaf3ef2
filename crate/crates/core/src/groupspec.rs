//! Textual group specifications.
//!
//! Built-ins: `sym:k`, `alt:k`, `cyclic:k`, `dihedral:k`, `trivial:k`,
//! `sylow:p:<spec>`. Inline generators: `gens:k:(1 2 3);(1 2)`. Anything
//! else (or `file:<path>`) names a group file: a `degree k` line followed by
//! one generator per line in cycle notation, `#` starting a comment line.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::sylow::{sylow_of_symmetric, sylow_subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Trivial(usize),
    Sylow(u64, Box<GroupSpec>),
    Inline { degree: usize, generators: Vec<Permutation> },
    File(PathBuf),
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, rest) = s.split_once(':').unwrap_or((s, ""));
        let spec = match head {
            "sym" => GroupSpec::Symmetric(parse_num(rest, "degree")?),
            "alt" => GroupSpec::Alternating(parse_num(rest, "degree")?),
            "cyclic" => GroupSpec::Cyclic(parse_num(rest, "degree")?),
            "dihedral" => GroupSpec::Dihedral(parse_num(rest, "degree")?),
            "trivial" => GroupSpec::Trivial(parse_num(rest, "degree")?),
            "sylow" => {
                let (p, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected sylow:p:<spec>, got {s:?}")))?;
                GroupSpec::Sylow(parse_num(p, "prime")?, Box::new(inner.parse()?))
            }
            "gens" => {
                let (k, gens) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("expected gens:k:<generators>, got {s:?}")))?;
                let degree = parse_num(k, "degree")?;
                let generators = gens
                    .split(';')
                    .map(str::trim)
                    .filter(|g| !g.is_empty())
                    .map(|g| Permutation::parse(g, degree))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::Inline { degree, generators }
            }
            "file" => GroupSpec::File(PathBuf::from(rest)),
            _ if s.is_empty() => return Err(Error::Parse("empty group spec".into())),
            _ => GroupSpec::File(PathBuf::from(s)),
        };
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Symmetric(k) => write!(f, "sym:{k}"),
            GroupSpec::Alternating(k) => write!(f, "alt:{k}"),
            GroupSpec::Cyclic(k) => write!(f, "cyclic:{k}"),
            GroupSpec::Dihedral(k) => write!(f, "dihedral:{k}"),
            GroupSpec::Trivial(k) => write!(f, "trivial:{k}"),
            GroupSpec::Sylow(p, inner) => write!(f, "sylow:{p}:{inner}"),
            GroupSpec::Inline { degree, generators } => {
                write!(f, "gens:{degree}:")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str(";")?;
                    }
                    write!(f, "{g}")?;
                }
                Ok(())
            }
            GroupSpec::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

impl GroupSpec {
    pub fn resolve(&self) -> Result<PermGroup> {
        match self {
            GroupSpec::Symmetric(k) => Ok(PermGroup::symmetric(*k)),
            GroupSpec::Alternating(k) => Ok(PermGroup::alternating(*k)),
            GroupSpec::Cyclic(k) => Ok(PermGroup::cyclic(*k)),
            GroupSpec::Dihedral(k) => Ok(PermGroup::dihedral(*k)),
            GroupSpec::Trivial(k) => Ok(PermGroup::trivial(*k)),
            GroupSpec::Sylow(p, inner) => match inner.as_ref() {
                GroupSpec::Symmetric(k) => sylow_of_symmetric(*k, *p),
                other => sylow_subgroup(&other.resolve()?, *p),
            },
            GroupSpec::Inline { degree, generators } => PermGroup::new(*degree, generators.clone()),
            GroupSpec::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
                parse_group_file(&text)
            }
        }
    }
}

/// Parses the group file format described in the module docs.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("group file is empty".into()))?;
    let degree: usize = header
        .strip_prefix("degree")
        .ok_or_else(|| Error::Parse(format!("expected `degree k`, got {header:?}")))
        .and_then(|k| parse_num(k, "degree"))?;
    let gens = lines
        .map(|l| Permutation::parse(l, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_roundtrip() {
        for s in [
            "sym:4",
            "alt:5",
            "cyclic:6",
            "dihedral:4",
            "trivial:3",
            "sylow:5:sym:15",
            "sylow:2:alt:4",
            "sylow:3:sylow:3:sym:9",
            "gens:5:(1 2 3);(4 5)",
        ] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
    }

    #[test]
    fn resolution() {
        assert_eq!("sym:4".parse::<GroupSpec>().unwrap().resolve().unwrap().order(), 24);
        assert_eq!("sylow:5:sym:15".parse::<GroupSpec>().unwrap().resolve().unwrap().order(), 125);
        assert_eq!("sylow:2:alt:4".parse::<GroupSpec>().unwrap().resolve().unwrap().order(), 4);
        assert_eq!("dihedral:6".parse::<GroupSpec>().unwrap().resolve().unwrap().order(), 12);
        assert_eq!("gens:5:(1 2 3)".parse::<GroupSpec>().unwrap().resolve().unwrap().order(), 3);
    }

    #[test]
    fn parse_errors() {
        assert!("sym:x".parse::<GroupSpec>().is_err());
        assert!("sylow:5".parse::<GroupSpec>().is_err());
        assert!("gens:3:(1 2 4)".parse::<GroupSpec>().is_err());
        assert!("".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn group_files() {
        let s3 = parse_group_file("degree 3\n(1 2 3)\n(1 2)\n").unwrap();
        assert!(s3.same_group(&PermGroup::symmetric(3)));
        let c3 = parse_group_file("# three-cycle\ndegree 5\n\n(1 2 3)\n").unwrap();
        assert_eq!(c3.order(), 3);
        assert!(parse_group_file("degree 3\n(1 2 4)\n").is_err());
        assert!(parse_group_file("degree 3\n(1 2 1)\n").is_err());
        assert_eq!(parse_group_file("degree 4\n").unwrap().order(), 1);
        assert!(parse_group_file("(1 2)\n").is_err());
    }
}
