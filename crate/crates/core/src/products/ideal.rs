// Copyright 2026 The submodel Authors.
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::fmt::Write as _;

use itertools::Itertools;

use super::ProductError;
use crate::structures::format::FormatError;
use crate::structures::Elem;

/// Largest index family a filter can range over.
pub const MAX_INDEX_COUNT: usize = 20;

fn mask_of(set: &[Elem]) -> u64 {
    set.iter().fold(0, |m, &a| m | 1 << a)
}

fn set_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

fn fmt_set(set: &[usize]) -> String {
    format!("{{{}}}", set.iter().join(","))
}

/// A family of subsets of the universe `0..base_size` of a structure, kept
/// in the order given. Validity is checked by [`validate_ideal`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexIdeal {
    base_size: usize,
    members: Vec<Vec<Elem>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealViolation {
    ElementOutOfRange { set: Vec<Elem> },
    Duplicate { set: Vec<Elem> },
    NotDownwardClosed { set: Vec<Elem>, missing: Vec<Elem> },
    NotUnionClosed { left: Vec<Elem>, right: Vec<Elem> },
    NotCovering { elem: Elem },
}

impl fmt::Display for IdealViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealViolation::ElementOutOfRange { set } => {
                write!(f, "{} has an element out of range", fmt_set(set))
            }
            IdealViolation::Duplicate { set } => write!(f, "{} is listed twice", fmt_set(set)),
            IdealViolation::NotDownwardClosed { set, missing } => {
                write!(
                    f,
                    "{} is a member but its subset {} is not",
                    fmt_set(set),
                    fmt_set(missing)
                )
            }
            IdealViolation::NotUnionClosed { left, right } => {
                write!(
                    f,
                    "union of {} and {} is not a member",
                    fmt_set(left),
                    fmt_set(right)
                )
            }
            IdealViolation::NotCovering { elem } => write!(f, "element {elem} lies in no member"),
        }
    }
}

impl IndexIdeal {
    /// Members are sorted internally; their order is kept.
    pub fn new(base_size: usize, members: Vec<Vec<Elem>>) -> Self {
        let members = members
            .into_iter()
            .map(|mut m| {
                m.sort_unstable();
                m.dedup();
                m
            })
            .collect();
        IndexIdeal { base_size, members }
    }

    /// All subsets of `0..n`, by size and then lexicographically.
    pub fn power_set(n: usize) -> Self {
        let members = (0..=n).flat_map(|k| (0..n).combinations(k)).collect();
        IndexIdeal {
            base_size: n,
            members,
        }
    }

    pub fn base_size(&self) -> usize {
        self.base_size
    }

    pub fn members(&self) -> &[Vec<Elem>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn index_of(&self, set: &[Elem]) -> Option<usize> {
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        self.members.iter().position(|m| *m == sorted)
    }

    /// Position of the whole universe, if it is a member.
    pub fn top(&self) -> Option<usize> {
        self.members.iter().position(|m| m.len() == self.base_size)
    }
}

/// Every failure of downward closure, union closure and covering.
pub fn validate_ideal(ideal: &IndexIdeal) -> Vec<IdealViolation> {
    let mut out = Vec::new();
    let n = ideal.base_size;
    if n > 63 {
        return vec![IdealViolation::ElementOutOfRange {
            set: (0..n).collect(),
        }];
    }
    let mut masks = Vec::new();
    for set in &ideal.members {
        if set.iter().any(|&a| a >= n) {
            out.push(IdealViolation::ElementOutOfRange { set: set.clone() });
            continue;
        }
        let m = mask_of(set);
        if masks.contains(&m) {
            out.push(IdealViolation::Duplicate { set: set.clone() });
        } else {
            masks.push(m);
        }
    }
    let has = |m: u64| masks.contains(&m);
    for &m in &masks {
        if let Some(a) = set_of(m).into_iter().find(|&a| !has(m & !(1 << a))) {
            out.push(IdealViolation::NotDownwardClosed {
                set: set_of(m),
                missing: set_of(m & !(1 << a)),
            });
        }
    }
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            if !has(a | b) {
                out.push(IdealViolation::NotUnionClosed {
                    left: set_of(a),
                    right: set_of(b),
                });
            }
        }
    }
    let covered = masks.iter().fold(0, |acc, m| acc | m);
    for elem in 0..n {
        if covered >> elem & 1 == 0 {
            out.push(IdealViolation::NotCovering { elem });
        }
    }
    out
}

/// A family of sets of indices into an ideal, each set stored as a bitmask
/// over positions. Kept sorted by mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexFilter {
    index_count: usize,
    members: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FilterViolation {
    Empty,
    IndexOutOfRange {
        set: Vec<usize>,
    },
    Improper,
    NotUpwardClosed {
        set: Vec<usize>,
        missing: Vec<usize>,
    },
    NotIntersectionClosed {
        left: Vec<usize>,
        right: Vec<usize>,
    },
}

impl fmt::Display for FilterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FilterViolation::Empty => f.write_str("filter has no members"),
            FilterViolation::IndexOutOfRange { set } => {
                write!(f, "{} names an index out of range", fmt_set(set))
            }
            FilterViolation::Improper => f.write_str("filter contains the empty set"),
            FilterViolation::NotUpwardClosed { set, missing } => {
                write!(
                    f,
                    "{} is a member but its superset {} is not",
                    fmt_set(set),
                    fmt_set(missing)
                )
            }
            FilterViolation::NotIntersectionClosed { left, right } => {
                write!(
                    f,
                    "intersection of {} and {} is not a member",
                    fmt_set(left),
                    fmt_set(right)
                )
            }
        }
    }
}

impl IndexFilter {
    /// A family over `index_count` indices; members are lists of indices.
    pub fn new(index_count: usize, members: &[Vec<usize>]) -> Result<Self, ProductError> {
        if index_count > MAX_INDEX_COUNT {
            return Err(ProductError::TooManyIndices {
                count: index_count,
                limit: MAX_INDEX_COUNT,
            });
        }
        let mut masks = Vec::with_capacity(members.len());
        for m in members {
            if m.iter().any(|&i| i >= index_count) {
                return Err(ProductError::InvalidFilter(vec![
                    FilterViolation::IndexOutOfRange { set: m.clone() },
                ]));
            }
            masks.push(mask_of(m));
        }
        masks.sort_unstable();
        masks.dedup();
        Ok(IndexFilter {
            index_count,
            members: masks,
        })
    }

    /// All supersets of `core`.
    pub fn principal(index_count: usize, core: &[usize]) -> Result<Self, ProductError> {
        if index_count > MAX_INDEX_COUNT {
            return Err(ProductError::TooManyIndices {
                count: index_count,
                limit: MAX_INDEX_COUNT,
            });
        }
        if core.iter().any(|&i| i >= index_count) {
            return Err(ProductError::InvalidFilter(vec![
                FilterViolation::IndexOutOfRange { set: core.to_vec() },
            ]));
        }
        let c = mask_of(core);
        let members = (0..1u64 << index_count).filter(|s| s & c == c).collect();
        Ok(IndexFilter {
            index_count,
            members,
        })
    }

    pub fn index_count(&self) -> usize {
        self.index_count
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.members.iter().map(|&m| set_of(m))
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        self.contains_mask(mask_of(set))
    }

    pub fn contains_mask(&self, mask: u64) -> bool {
        self.members.binary_search(&mask).is_ok()
    }

    /// Intersection of all members.
    pub fn core(&self) -> Vec<usize> {
        set_of(self.core_mask())
    }

    pub(crate) fn core_mask(&self) -> u64 {
        let all = if self.index_count == 64 {
            u64::MAX
        } else {
            (1 << self.index_count) - 1
        };
        self.members.iter().fold(all, |acc, m| acc & m)
    }

    /// Every member of `other` is a member of `self`.
    pub fn extends(&self, other: &IndexFilter) -> bool {
        self.index_count == other.index_count
            && other.members.iter().all(|&m| self.contains_mask(m))
    }

    /// The filter generated by `self` and `set`, or `None` when it would
    /// contain the empty set.
    pub fn extend_with(&self, set: &[usize]) -> Result<Option<IndexFilter>, ProductError> {
        let s = mask_of(set);
        let core = self.core_mask() & s;
        if core == 0 {
            return Ok(None);
        }
        IndexFilter::principal(self.index_count, &set_of(core)).map(Some)
    }
}

/// Every failure of nonemptiness, properness, upward closure and closure
/// under intersection.
pub fn validate_filter(filter: &IndexFilter) -> Vec<FilterViolation> {
    let mut out = Vec::new();
    if filter.members.is_empty() {
        return vec![FilterViolation::Empty];
    }
    if filter.contains_mask(0) {
        out.push(FilterViolation::Improper);
    }
    for &m in &filter.members {
        if let Some(i) =
            (0..filter.index_count).find(|&i| m >> i & 1 == 0 && !filter.contains_mask(m | 1 << i))
        {
            out.push(FilterViolation::NotUpwardClosed {
                set: set_of(m),
                missing: set_of(m | 1 << i),
            });
        }
    }
    let mut acc = filter.members[0];
    for &m in &filter.members[1..] {
        if !filter.contains_mask(acc & m) {
            out.push(FilterViolation::NotIntersectionClosed {
                left: set_of(acc),
                right: set_of(m),
            });
            break;
        }
        acc &= m;
    }
    out
}

/// The filter generated by the upper cones `{j : j ⊇ i}` of the members of
/// a (directed) ideal, as an explicit family.
pub fn upper_cone_filter(ideal: &IndexIdeal) -> Result<IndexFilter, ProductError> {
    let k = ideal.len();
    if k == 0 {
        return Err(ProductError::InvalidIdeal(vec![
            IdealViolation::NotCovering { elem: 0 },
        ]));
    }
    if k > MAX_INDEX_COUNT {
        return Err(ProductError::TooManyIndices {
            count: k,
            limit: MAX_INDEX_COUNT,
        });
    }
    let masks: Vec<u64> = ideal.members().iter().map(|m| mask_of(m)).collect();
    for (a, b) in masks.iter().tuple_combinations() {
        if !masks.iter().any(|&c| c & (a | b) == a | b) {
            return Err(ProductError::NotDirected);
        }
    }
    let cones: Vec<u64> = masks
        .iter()
        .map(|&i| {
            (0..k)
                .filter(|&j| masks[j] & i == i)
                .fold(0, |acc, j| acc | 1 << j)
        })
        .collect();
    let members = (0..1u64 << k)
        .filter(|&s| cones.iter().any(|&c| c & !s == 0))
        .collect();
    Ok(IndexFilter {
        index_count: k,
        members,
    })
}

fn block_lines(text: &str, keyword: &str) -> Result<Vec<(usize, Vec<usize>)>, FormatError> {
    let mut inside = false;
    let mut found = false;
    let mut rows = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if !inside {
            if line == keyword {
                if found {
                    return Err(FormatError::new(
                        line_no,
                        format!("second `{keyword}` block"),
                    ));
                }
                inside = true;
                found = true;
            }
            continue;
        }
        if line == "end" {
            inside = false;
            continue;
        }
        if line == "-" {
            rows.push((line_no, Vec::new()));
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|w| {
                w.parse::<usize>().map_err(|_| {
                    FormatError::new(line_no, format!("`{w}` is not a natural number"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push((line_no, row));
    }
    if inside {
        return Err(FormatError::new(
            text.lines().count(),
            format!("`{keyword}` block is not terminated by `end`"),
        ));
    }
    if !found {
        return Err(FormatError::new(1, format!("no `{keyword}` block")));
    }
    Ok(rows)
}

/// Reads the `ideal` block of `text`: one member per line as
/// whitespace-separated elements, `-` for the empty set.
pub fn parse_ideal(text: &str, base_size: usize) -> Result<IndexIdeal, FormatError> {
    let rows = block_lines(text, "ideal")?;
    for (line, row) in &rows {
        if let Some(a) = row.iter().find(|&&a| a >= base_size) {
            return Err(FormatError::new(
                *line,
                format!("element {a} outside universe of size {base_size}"),
            ));
        }
    }
    Ok(IndexIdeal::new(
        base_size,
        rows.into_iter().map(|(_, r)| r).collect(),
    ))
}

/// Reads the `filter` block of `text`: one member per line as
/// whitespace-separated positions of ideal members, `-` for the empty set.
pub fn parse_filter(text: &str, index_count: usize) -> Result<IndexFilter, FormatError> {
    let rows = block_lines(text, "filter")?;
    for (line, row) in &rows {
        if let Some(i) = row.iter().find(|&&i| i >= index_count) {
            return Err(FormatError::new(
                *line,
                format!("index {i} outside ideal of {index_count} members"),
            ));
        }
    }
    let members: Vec<Vec<usize>> = rows.into_iter().map(|(_, r)| r).collect();
    IndexFilter::new(index_count, &members).map_err(|e| FormatError::new(1, e.to_string()))
}

fn write_row(out: &mut String, row: &[usize]) {
    if row.is_empty() {
        out.push_str("-\n");
    } else {
        let _ = writeln!(out, "{}", row.iter().join(" "));
    }
}

pub fn write_ideal(ideal: &IndexIdeal) -> String {
    let mut out = String::from("ideal\n");
    for m in ideal.members() {
        write_row(&mut out, m);
    }
    out.push_str("end\n");
    out
}

pub fn write_filter(filter: &IndexFilter) -> String {
    let mut out = String::from("filter\n");
    for m in filter.members() {
        write_row(&mut out, &m);
    }
    out.push_str("end\n");
    out
}
