//! Line-based text formats.
//!
//! ```text
//! # comments run to the end of the line
//! lattice 4          # or: poset <n>
//! cover 0 1          # 0 is covered by 1
//! cover 0 2
//! cover 1 3
//! cover 2 3
//! label 1 a          # optional display names
//!
//! geometry           # a poset block followed by flat lines
//! poset 2
//! flat               # the empty flat
//! flat 0
//! flat 1
//! flat 0 1
//!
//! congruence 4       # partition of 0..4 into blocks
//! block 0 1
//! block 2 3
//! ```
//!
//! A file may hold several blocks of the same kind one after another.

use crate::congruence::Congruence;
use crate::elemset::ElemSet;
use crate::error::{Error, Result};
use crate::faigle::FaigleGeometry;
use crate::lattice::Lattice;
use crate::poset::Poset;

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    rest: &'a str,
}

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                return None;
            }
            let (keyword, rest) = content
                .split_once(char::is_whitespace)
                .map_or((content, ""), |(k, r)| (k, r.trim()));
            Some(Line {
                number: i + 1,
                keyword,
                rest,
            })
        })
        .collect()
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn numbers(line: &Line<'_>) -> Result<Vec<usize>> {
    line.rest
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_error(line.number, format!("expected an index, found {t:?}")))
        })
        .collect()
}

fn in_range(line: &Line<'_>, xs: &[usize], n: usize) -> Result<()> {
    match xs.iter().find(|&&x| x >= n) {
        Some(x) => Err(parse_error(
            line.number,
            format!("index {x} out of range for {n} elements"),
        )),
        None => Ok(()),
    }
}

fn single_count(line: &Line<'_>) -> Result<usize> {
    match numbers(line)?.as_slice() {
        [n] => Ok(*n),
        _ => Err(parse_error(
            line.number,
            format!("{} takes exactly one count", line.keyword),
        )),
    }
}

/// Parses a poset block starting at `lines[*pos]`, which must be a
/// `poset` or `lattice` header.
fn poset_block(lines: &[Line<'_>], pos: &mut usize) -> Result<Poset> {
    let header = &lines[*pos];
    let n = single_count(header)?;
    *pos += 1;
    let mut covers = Vec::new();
    let mut labels = vec![None; n];
    while let Some(line) = lines.get(*pos) {
        match line.keyword {
            "cover" => {
                let xs = numbers(line)?;
                let [lo, hi] = xs[..] else {
                    return Err(parse_error(line.number, "cover takes two indices"));
                };
                in_range(line, &xs, n)?;
                covers.push((lo, hi));
            }
            "label" => {
                let (index, name) = line
                    .rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| parse_error(line.number, "label takes an index and a name"))?;
                let x: usize = index
                    .parse()
                    .map_err(|_| parse_error(line.number, format!("expected an index, found {index:?}")))?;
                in_range(line, &[x], n)?;
                labels[x] = Some(name.trim().to_string());
            }
            _ => break,
        }
        *pos += 1;
    }
    Ok(Poset::from_covers(n, &covers)?.with_labels(labels))
}

fn expect_header<'a>(lines: &'a [Line<'a>], pos: usize, keywords: &[&str]) -> Result<&'a Line<'a>> {
    let line = &lines[pos];
    if keywords.contains(&line.keyword) {
        Ok(line)
    } else {
        Err(parse_error(
            line.number,
            format!("expected {}, found {:?}", keywords.join(" or "), line.keyword),
        ))
    }
}

/// Every poset block in `text`. `lattice` headers are accepted too.
pub fn parse_posets(text: &str) -> Result<Vec<Poset>> {
    let lines = lines(text);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < lines.len() {
        expect_header(&lines, pos, &["poset", "lattice"])?;
        out.push(poset_block(&lines, &mut pos)?);
    }
    Ok(out)
}

/// Every lattice block in `text`. `poset` headers are accepted if the
/// order happens to be a lattice.
pub fn parse_lattices(text: &str) -> Result<Vec<Lattice>> {
    parse_posets(text)?.into_iter().map(Lattice::from_poset).collect()
}

/// Exactly one lattice.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    single(parse_lattices(text)?, "lattice")
}

/// Exactly one poset.
pub fn parse_poset(text: &str) -> Result<Poset> {
    single(parse_posets(text)?, "poset")
}

fn single<T>(mut v: Vec<T>, what: &str) -> Result<T> {
    if v.len() == 1 {
        Ok(v.pop().expect("length checked"))
    } else {
        Err(parse_error(0, format!("expected one {what}, found {}", v.len())))
    }
}

/// Every geometry block in `text`. Geometries are returned unverified.
pub fn parse_geometries(text: &str) -> Result<Vec<FaigleGeometry>> {
    let lines = lines(text);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < lines.len() {
        let header = expect_header(&lines, pos, &["geometry"])?;
        if !header.rest.is_empty() {
            return Err(parse_error(header.number, "geometry takes no arguments"));
        }
        pos += 1;
        if pos == lines.len() {
            return Err(parse_error(header.number, "geometry needs a poset block"));
        }
        expect_header(&lines, pos, &["poset"])?;
        let ground = poset_block(&lines, &mut pos)?;
        let mut flats = Vec::new();
        while let Some(line) = lines.get(pos).filter(|l| l.keyword == "flat") {
            let xs = numbers(line)?;
            in_range(line, &xs, ground.len())?;
            flats.push(xs.into_iter().collect::<ElemSet>());
            pos += 1;
        }
        out.push(FaigleGeometry::new(ground, flats)?);
    }
    Ok(out)
}

/// Exactly one geometry.
pub fn parse_geometry(text: &str) -> Result<FaigleGeometry> {
    single(parse_geometries(text)?, "geometry")
}

/// Every congruence block in `text`.
pub fn parse_congruences(text: &str) -> Result<Vec<Congruence>> {
    let lines = lines(text);
    let mut pos = 0;
    let mut out = Vec::new();
    while pos < lines.len() {
        let header = expect_header(&lines, pos, &["congruence"])?;
        let n = single_count(header)?;
        pos += 1;
        let mut blocks = Vec::new();
        while let Some(line) = lines.get(pos).filter(|l| l.keyword == "block") {
            let xs = numbers(line)?;
            in_range(line, &xs, n)?;
            blocks.push(xs);
            pos += 1;
        }
        let c = Congruence::from_blocks(n, &blocks).map_err(|e| parse_error(header.number, e.to_string()))?;
        out.push(c);
    }
    Ok(out)
}

fn write_order(out: &mut String, keyword: &str, p: &Poset) {
    out.push_str(&format!("{keyword} {}\n", p.len()));
    for (lo, hi) in p.covers() {
        out.push_str(&format!("cover {lo} {hi}\n"));
    }
    for (x, label) in p.labels().iter().enumerate() {
        if let Some(label) = label {
            out.push_str(&format!("label {x} {label}\n"));
        }
    }
}

pub fn write_poset(p: &Poset) -> String {
    let mut out = String::new();
    write_order(&mut out, "poset", p);
    out
}

pub fn write_lattice(l: &Lattice) -> String {
    let mut out = String::new();
    write_order(&mut out, "lattice", l.order());
    out
}

fn index_line(keyword: &str, xs: impl IntoIterator<Item = usize>) -> String {
    let mut line = keyword.to_string();
    for x in xs {
        line.push_str(&format!(" {x}"));
    }
    line.push('\n');
    line
}

pub fn write_geometry(g: &FaigleGeometry) -> String {
    let mut out = String::from("geometry\n");
    write_order(&mut out, "poset", g.ground());
    for f in g.flats() {
        out.push_str(&index_line("flat", f.iter()));
    }
    out
}

pub fn write_congruence(c: &Congruence) -> String {
    let mut out = format!("congruence {}\n", c.len());
    for b in c.blocks() {
        out.push_str(&index_line("block", b.iter()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn lattice_roundtrip() {
        let mut l = Lattice::n5();
        let text = write_lattice(&l);
        assert_eq!(parse_lattice(&text).unwrap(), l);
        let order = l.order().clone().with_labels(vec![
            Some("zero".into()),
            Some("a".into()),
            None,
            None,
            Some("one".into()),
        ]);
        l = Lattice::from_poset(order).unwrap();
        assert_eq!(parse_lattice(&write_lattice(&l)).unwrap(), l);
    }

    #[test]
    fn comments_and_blank_lines() {
        let text = "# square\n\nlattice 4 # four elements\ncover 0 1\ncover 0 2\n  cover 1 3\ncover 2 3\n";
        let l = parse_lattice(text).unwrap();
        assert_eq!(l.len(), 4);
        assert_eq!(l.join(1, 2), 3);
    }

    #[test]
    fn several_blocks() {
        let text = format!(
            "{}{}",
            write_lattice(&Lattice::chain(2)),
            write_lattice(&Lattice::m(3))
        );
        let ls = parse_lattices(&text).unwrap();
        assert_eq!(ls.len(), 2);
        assert!(parse_lattice(&text).is_err());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_lattice("lattice 2\ncover 0 x\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                message: "expected an index, found \"x\"".into()
            }
        );
        let err = parse_lattice("lattice 2\n\ncover 0 5\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_lattice("cover 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = parse_lattice("lattice 2 3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        // structural problems keep their own error kind
        assert!(matches!(
            parse_lattice("lattice 3\ncover 0 1\ncover 0 2\n"),
            Err(Error::NotALattice(..))
        ));
        assert!(matches!(
            parse_poset("poset 2\ncover 0 1\ncover 1 0\n"),
            Err(Error::NotAPoset(_))
        ));
    }

    #[test]
    fn geometry_roundtrip() {
        let text = "geometry\nposet 3\nflat\nflat 0\nflat 1\nflat 2\nflat 0 1\nflat 0 1 2\n";
        let g = parse_geometry(text).unwrap();
        assert_eq!(g.flats().len(), 6);
        assert_eq!(g.flats()[0], ElemSet::new());
        assert_eq!(parse_geometry(&write_geometry(&g)).unwrap(), g);
        assert!(matches!(
            parse_geometry("geometry\nposet 1\nflat 3\n"),
            Err(Error::Parse { line: 3, .. })
        ));
    }

    #[test]
    fn congruence_roundtrip() {
        let c = parse_congruences("congruence 4\nblock 0 1\nblock 2 3\n").unwrap();
        assert_eq!(c[0].block_count(), 2);
        assert_eq!(write_congruence(&c[0]), "congruence 4\nblock 0 1\nblock 2 3\n");
        assert!(matches!(
            parse_congruences("congruence 3\nblock 0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
    }

    proptest! {
        #[test]
        fn chain_products_roundtrip(p in 1usize..5, q in 1usize..5) {
            let l = Lattice::chain_product(p, q);
            prop_assert_eq!(parse_lattice(&write_lattice(&l)).unwrap(), l);
        }
    }
}
