//! Line-based topology files.
//!
//! ```text
//! # two cells
//! node 0001
//! node 0002
//! link 0001 0002 0.5
//! route 0001 0002 via 0002
//! ```
//!
//! The link threshold defaults to [`DEFAULT_THRESHOLD`].

use dnanet_core::channel::{Topology, DEFAULT_THRESHOLD};
use dnanet_core::stack::Address;

use crate::{Error, ParseError};

/// Parses a 1 to 4 digit hexadecimal address.
pub fn parse_address(s: &str) -> Option<Address> {
    if s.is_empty() || s.len() > 4 || !s.bytes().all(|b| b.is_ascii_hexdigit()) {
        return None;
    }
    u16::from_str_radix(s, 16).ok().map(Address)
}

/// Parses a topology file.
pub fn parse(text: &str) -> Result<Topology, Error> {
    let mut topo = Topology::new();
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let words: Vec<(usize, &str)> = word_columns(line);
        let Some(&(_, kw)) = words.first() else { continue };
        let addr = |k: usize| -> Result<Address, Error> {
            let (col, w) = words[k];
            parse_address(w).ok_or_else(|| ParseError::new(lineno, col, format!("bad address {w:?}")).into())
        };
        let arity = |ok: bool, usage: &str| -> Result<(), Error> {
            if ok {
                Ok(())
            } else {
                Err(ParseError::new(lineno, 1, format!("expected `{usage}`")).into())
            }
        };
        let at_line =
            |e: dnanet_core::channel::ChannelError| -> Error { ParseError::new(lineno, 1, e.to_string()).into() };
        match kw {
            "node" => {
                arity(words.len() == 2, "node <hex16>")?;
                topo.add_node(addr(1)?).map_err(at_line)?;
            }
            "link" => {
                arity(matches!(words.len(), 3 | 4), "link <hex16> <hex16> [threshold]")?;
                let threshold = match words.get(3) {
                    Some(&(col, w)) => {
                        w.parse::<f64>().map_err(|_| ParseError::new(lineno, col, format!("bad threshold {w:?}")))?
                    }
                    None => DEFAULT_THRESHOLD,
                };
                topo.add_link(addr(1)?, addr(2)?, threshold).map_err(at_line)?;
            }
            "route" => {
                arity(words.len() == 5 && words[3].1 == "via", "route <hex16> <hex16> via <hex16>")?;
                topo.add_route(addr(1)?, addr(2)?, addr(4)?).map_err(at_line)?;
            }
            other => return Err(ParseError::new(lineno, words[0].0, format!("unknown directive {other:?}")).into()),
        }
    }
    Ok(topo)
}

/// Whitespace-separated words with their 1-based columns.
fn word_columns(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain([(line.len(), ' ')]) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    out
}
