use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};

/// A hyperbolic element of the universal group `U(F)`, encoded by its
/// periodic axis data.
///
/// `word` lists the colours `c₁..cₙ` of the edges on the path from a base
/// vertex `v` on the axis to `x⁻¹v`. The same local action `twist ∈ F` is
/// applied at every vertex, so the edge from `v` towards `xv` has colour
/// `c₀ = twist(cₙ)` (the seam colour).
#[derive(Clone)]
pub struct AxisData {
    group: Arc<PermGroup>,
    twist: Permutation,
    word: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxisViolation {
    EmptyWord,
    TwistDegree { expected: usize, found: usize },
    TwistNotInGroup,
    ColourOutOfRange { position: usize, colour: usize },
    RepeatedColour { position: usize },
    SeamClash { seam: usize },
}

impl fmt::Display for AxisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxisViolation::EmptyWord => f.write_str("empty colour word"),
            AxisViolation::TwistDegree { expected, found } => {
                write!(f, "twist has degree {found}, group has degree {expected}")
            }
            AxisViolation::TwistNotInGroup => f.write_str("twist is not in the local action group"),
            AxisViolation::ColourOutOfRange { position, colour } => {
                write!(f, "colour {colour} at position {position} out of range")
            }
            AxisViolation::RepeatedColour { position } => {
                write!(f, "consecutive equal colours at positions {position} and {}", position + 1)
            }
            AxisViolation::SeamClash { seam } => {
                write!(f, "seam colour twist(c_n) = {seam} equals c_1")
            }
        }
    }
}

impl AxisData {
    /// Validated constructor.
    pub fn new(group: Arc<PermGroup>, twist: Permutation, word: Vec<usize>) -> Result<Self> {
        let a = AxisData { group, twist, word };
        validate_axis(&a).map_err(Error::InvalidAxis)?;
        Ok(a)
    }

    /// Builds the data without checking it; see [`validate_axis`].
    pub fn unchecked(group: Arc<PermGroup>, twist: Permutation, word: Vec<usize>) -> Self {
        AxisData { group, twist, word }
    }

    /// Parses `twist=(1 2 3); word=1,4,2` (or `twist=id; word=1,2`) over `group`.
    pub fn parse(text: &str, group: Arc<PermGroup>) -> Result<Self> {
        let mut twist = None;
        let mut word = None;
        for field in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            match key.trim() {
                "twist" => twist = Some(Permutation::parse(value.trim(), group.degree())?),
                "word" => {
                    word = Some(
                        value
                            .split(',')
                            .map(|s| {
                                s.trim()
                                    .parse::<usize>()
                                    .map_err(|_| Error::Parse(format!("bad colour {s:?}")))
                            })
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                other => return Err(Error::Parse(format!("unknown axis field {other:?}"))),
            }
        }
        let twist = twist.unwrap_or_else(|| group.identity());
        let word = word.ok_or_else(|| Error::Parse("axis literal needs word=...".into()))?;
        AxisData::new(group, twist, word)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn twist(&self) -> &Permutation {
        &self.twist
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn degree(&self) -> usize {
        self.group.degree()
    }

    /// `c₀ = twist(cₙ)`.
    pub fn seam(&self) -> usize {
        self.twist.apply(*self.word.last().expect("validated word is nonempty"))
    }

    /// The same twist and word over another local action group.
    pub fn over(&self, group: Arc<PermGroup>) -> Result<AxisData> {
        AxisData::new(group, self.twist.clone(), self.word.clone())
    }

    /// `c₀, c₁, ..., cₙ`.
    pub fn colours_with_seam(&self) -> Vec<usize> {
        std::iter::once(self.seam()).chain(self.word.iter().copied()).collect()
    }
}

impl fmt::Display for AxisData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist.is_identity() {
            f.write_str("twist=id")?;
        } else {
            write!(f, "twist={}", self.twist)?;
        }
        f.write_str("; word=")?;
        for (i, c) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AxisData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AxisData({self} over {:?})", self.group)
    }
}

/// Checks every axis invariant and reports each violation separately.
pub fn validate_axis(a: &AxisData) -> std::result::Result<(), Vec<AxisViolation>> {
    let k = a.group.degree();
    let mut bad = Vec::new();
    if a.twist.degree() != k {
        bad.push(AxisViolation::TwistDegree {
            expected: k,
            found: a.twist.degree(),
        });
    } else if !a.group.contains(&a.twist) {
        bad.push(AxisViolation::TwistNotInGroup);
    }
    if a.word.is_empty() {
        bad.push(AxisViolation::EmptyWord);
        return Err(bad);
    }
    let mut in_range = true;
    for (i, &c) in a.word.iter().enumerate() {
        if c == 0 || c > k {
            bad.push(AxisViolation::ColourOutOfRange {
                position: i + 1,
                colour: c,
            });
            in_range = false;
        }
    }
    for (i, pair) in a.word.windows(2).enumerate() {
        if pair[0] == pair[1] {
            bad.push(AxisViolation::RepeatedColour { position: i + 1 });
        }
    }
    if in_range && a.twist.degree() == k {
        let seam = a.twist.apply(*a.word.last().expect("nonempty"));
        if seam == a.word[0] {
            bad.push(AxisViolation::SeamClash { seam });
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(bad)
    }
}

/// Axis data of `x⁻¹`: twist `τ⁻¹` and word `τ(cₙ), τ(cₙ₋₁), ..., τ(c₁)`.
pub fn inverse_axis(a: &AxisData) -> Result<AxisData> {
    validate_axis(a).map_err(Error::InvalidAxis)?;
    let word = a.word.iter().rev().map(|&c| a.twist.apply(c)).collect();
    AxisData::new(a.group.clone(), a.twist.inverse(), word)
}
