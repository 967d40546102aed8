//! Poset text format.
//!
//! ```text
//! poset vee
//! elements 3
//! cover 0 1     # 1 covers 0
//! cover 0 2
//! label 0 3     # optional; all or none
//! ```
//!
//! Records are separated by blank lines or start at a new `poset` line.
//! `#` starts a comment.

use std::fmt::Write as _;

use crate::classes::RootedTree;
use crate::error::Error;
use crate::poset::{LabeledPoset, Poset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetRecord {
    pub name: String,
    pub poset: Poset,
    /// `labels[u]` is `ω(u)` when the record carries a labeling.
    pub labels: Option<Vec<usize>>,
}

impl PosetRecord {
    pub fn unlabeled(name: impl Into<String>, poset: Poset) -> Self {
        PosetRecord { name: name.into(), poset, labels: None }
    }

    pub fn labeled(&self) -> Option<Result<LabeledPoset, Error>> {
        self.labels
            .as_ref()
            .map(|l| LabeledPoset::new(self.poset.clone(), l.clone()))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "poset {}", self.name).unwrap();
        writeln!(s, "elements {}", self.poset.len()).unwrap();
        for &(u, v) in self.poset.covers() {
            writeln!(s, "cover {u} {v}").unwrap();
        }
        if let Some(labels) = &self.labels {
            for (u, k) in labels.iter().enumerate() {
                writeln!(s, "label {u} {k}").unwrap();
            }
        }
        s
    }
}

#[derive(Default)]
struct Pending {
    name: Option<String>,
    start: usize,
    elements: Option<usize>,
    covers: Vec<(usize, usize)>,
    labels: Vec<(usize, usize, usize)>,
}

impl Pending {
    fn is_blank(&self) -> bool {
        self.name.is_none() && self.elements.is_none() && self.covers.is_empty() && self.labels.is_empty()
    }

    fn finish(self) -> Result<PosetRecord, Error> {
        let line = self.start;
        let n = self.elements.ok_or(Error::Parse { line, msg: "missing `elements` line".into() })?;
        let poset = Poset::from_covers(n, &self.covers).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        let labels = if self.labels.is_empty() {
            None
        } else {
            let mut omega = vec![0usize; n];
            for &(l, u, k) in &self.labels {
                if omega[u] != 0 {
                    return Err(Error::Parse { line: l, msg: format!("element {u} labeled twice") });
                }
                omega[u] = k;
            }
            LabeledPoset::new(poset.clone(), omega.clone())
                .map_err(|e| Error::Parse { line, msg: e.to_string() })?;
            Some(omega)
        };
        Ok(PosetRecord { name: self.name.unwrap_or_else(|| "unnamed".into()), poset, labels })
    }
}

/// Parses every record in `text`.
pub fn parse_posets(text: &str) -> Result<Vec<PosetRecord>, Error> {
    let mut out = Vec::new();
    let mut cur = Pending::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            // comment-only lines do not end a record
            if raw.trim().is_empty() && !cur.is_blank() {
                out.push(std::mem::take(&mut cur).finish()?);
            }
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        let err = |msg: String| Error::Parse { line, msg };
        let num = |t: Option<&&str>| -> Result<usize, Error> {
            t.ok_or_else(|| err("missing number".into()))?
                .parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer in {content:?}")))
        };
        match toks[0] {
            "poset" => {
                if !cur.is_blank() {
                    out.push(std::mem::take(&mut cur).finish()?);
                }
                cur.name = Some(toks[1..].join(" "));
                cur.start = line;
            }
            "elements" => {
                if cur.elements.is_some() {
                    return Err(err("duplicate `elements` line".into()));
                }
                if cur.is_blank() {
                    cur.start = line;
                }
                let n = num(toks.get(1))?;
                if n > crate::poset::MAX_ELEMENTS {
                    return Err(err(format!("at most {} elements supported", crate::poset::MAX_ELEMENTS)));
                }
                cur.elements = Some(n);
            }
            "cover" | "label" => {
                let n = cur.elements.ok_or_else(|| err(format!("`{}` before `elements`", toks[0])))?;
                let (a, b) = (num(toks.get(1))?, num(toks.get(2))?);
                if toks.len() > 3 {
                    return Err(err("trailing tokens".into()));
                }
                if a >= n {
                    return Err(err(format!("element {a} out of range 0..{n}")));
                }
                if toks[0] == "cover" {
                    if b >= n {
                        return Err(err(format!("element {b} out of range 0..{n}")));
                    }
                    if cur.covers.contains(&(a, b)) {
                        return Err(err(format!("duplicate cover {a} {b}")));
                    }
                    cur.covers.push((a, b));
                } else {
                    if b == 0 || b > n {
                        return Err(err(format!("label {b} outside 1..={n}")));
                    }
                    if cur.labels.iter().any(|&(_, _, k)| k == b) {
                        return Err(err(format!("label {b} used twice")));
                    }
                    cur.labels.push((line, a, b));
                }
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }
    if !cur.is_blank() {
        out.push(cur.finish()?);
    }
    Ok(out)
}

/// Parses exactly one record.
pub fn parse_poset(text: &str) -> Result<PosetRecord, Error> {
    let mut recs = parse_posets(text)?;
    match recs.len() {
        1 => Ok(recs.pop().expect("one record")),
        k => Err(Error::Parse { line: 1, msg: format!("expected one poset, found {k}") }),
    }
}

pub fn write_posets(records: &[PosetRecord]) -> String {
    records.iter().map(PosetRecord::to_text).collect::<Vec<_>>().join("\n")
}

/// Converts a nested-parentheses tree into a poset record.
pub fn tree_record(name: impl Into<String>, tree: &RootedTree) -> Result<PosetRecord, Error> {
    Ok(PosetRecord::unlabeled(name, tree.to_poset()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    const VEE: &str = "\
# the poset vee
poset vee
elements 3
cover 0 1   # b covers a
cover 0 2
label 0 3
label 1 1
label 2 2
";

    #[test]
    fn parse_labeled() {
        let rec = parse_poset(VEE).unwrap();
        assert_eq!(rec.name, "vee");
        assert_eq!(rec.poset.covers(), &[(0, 1), (0, 2)]);
        assert_eq!(rec.labels, Some(vec![3, 1, 2]));
        assert!(rec.labeled().unwrap().unwrap().is_strict());
    }

    #[test]
    fn round_trip_stream() {
        let recs = vec![
            PosetRecord::unlabeled("a", Poset::chain(3)),
            parse_poset(VEE).unwrap(),
            PosetRecord::unlabeled("e", Poset::empty()),
        ];
        let text = write_posets(&recs);
        assert_eq!(parse_posets(&text).unwrap(), recs);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("poset x\nelements 2\ncover 0 1\ncover 0 1\n", 4, "duplicate cover"),
            ("poset x\ncover 0 1\n", 2, "before `elements`"),
            ("poset x\nelements 2\ncover 0 5\n", 3, "out of range"),
            ("poset x\nelements 2\nlabel 0 1\nlabel 1 1\n", 4, "used twice"),
            ("poset x\nelements 2\nfrobnicate\n", 3, "unknown directive"),
            ("poset x\nelements 2\ncover 0 1\ncover 1 0\n", 1, "not a partial order"),
            ("poset x\nelements 2\nlabel 0 1\n", 1, "bijection"),
        ];
        for (text, line, needle) in cases {
            match parse_posets(text) {
                Err(Error::Parse { line: l, msg }) => {
                    assert_eq!(l, line, "{text:?}: {msg}");
                    assert!(msg.contains(needle), "{msg:?} lacks {needle:?}");
                }
                other => panic!("{text:?} gave {other:?}"),
            }
        }
    }

    #[test]
    fn tree_conversion() {
        let t: RootedTree = "(()())".parse().unwrap();
        let rec = tree_record("cherry", &t).unwrap();
        assert_eq!(rec.to_text(), "poset cherry\nelements 3\ncover 0 1\ncover 0 2\n");
    }
}
