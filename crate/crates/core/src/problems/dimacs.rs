//! Undirected graph ingestion: DIMACS ascii (`c` / `p edge N M` / `e u v`)
//! and headerless `u v` pair files.

use std::collections::BTreeSet;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use log::warn;

use crate::error::{Error, Result};

/// Deduplicated undirected edges with 0-based endpoints, `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UndirectedGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    pub warnings: Vec<String>,
}

fn parse_id(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        message: "missing vertex id".into(),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{tok}` is not a vertex id"),
    })
}

/// Reads a DIMACS edge file or a plain `u v` pair file.
///
/// DIMACS ids are 1-based. In pair files the ids are 1-based unless a `0`
/// appears, in which case they are taken as 0-based; the node count is
/// inferred from the largest id.
pub fn parse_dimacs_edges<R: BufRead>(reader: R) -> Result<UndirectedGraph> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();
    let mut pair_format = false;
    let mut saw_content = false;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        saw_content = true;
        let mut toks = trimmed.split_whitespace();
        let first = toks.next().unwrap_or_default();
        match first {
            "c" => continue,
            _ if first.starts_with('c') && first.parse::<usize>().is_err() => continue,
            "p" => {
                if header.is_some() || !raw.is_empty() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "unexpected problem line".into(),
                    });
                }
                let _format = toks.next();
                let n = parse_id(toks.next(), line_no)?;
                let m = parse_id(toks.next(), line_no)?;
                header = Some((n, m));
            }
            "e" => {
                if pair_format {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "`e` line in a pair-format file".into(),
                    });
                }
                let u = parse_id(toks.next(), line_no)?;
                let v = parse_id(toks.next(), line_no)?;
                let n = header.map(|h| h.0).ok_or_else(|| Error::Parse {
                    line: line_no,
                    message: "edge line before the `p edge` header".into(),
                })?;
                for id in [u, v] {
                    if id == 0 || id > n {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("vertex {id} outside 1..={n}"),
                        });
                    }
                }
                raw.push((u - 1, v - 1, line_no));
            }
            _ => {
                if header.is_some() {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("malformed line `{trimmed}`"),
                    });
                }
                pair_format = true;
                let u = parse_id(Some(first), line_no)?;
                let v = parse_id(toks.next(), line_no)?;
                raw.push((u, v, line_no));
            }
        }
        if toks.next().is_some() && first != "p" && first != "c" {
            return Err(Error::Parse {
                line: line_no,
                message: format!("trailing tokens in `{trimmed}`"),
            });
        }
    }

    if !saw_content || (header.is_none() && raw.is_empty()) {
        return Err(Error::Parse {
            line: 0,
            message: "no graph data".into(),
        });
    }

    let mut warnings = Vec::new();
    let nodes = match header {
        Some((n, m)) => {
            if m != raw.len() {
                warnings.push(format!(
                    "header declares {m} edges, found {} edge lines",
                    raw.len()
                ));
            }
            n
        }
        None => {
            let zero_based = raw.iter().any(|&(u, v, _)| u == 0 || v == 0);
            let max = raw.iter().map(|&(u, v, _)| u.max(v)).max().unwrap_or(0);
            if !zero_based {
                for e in &mut raw {
                    e.0 -= 1;
                    e.1 -= 1;
                }
                max
            } else {
                max + 1
            }
        }
    };

    let mut seen = BTreeSet::new();
    let mut edges = Vec::with_capacity(raw.len());
    let mut duplicates = 0usize;
    for (u, v, line_no) in raw {
        if u == v {
            warnings.push(format!("line {line_no}: self-loop on vertex {} ignored", u + 1));
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        } else {
            duplicates += 1;
        }
    }
    if duplicates > 0 {
        warnings.push(format!("{duplicates} duplicate edge lines removed"));
    }
    for w in &warnings {
        warn!("{w}");
    }
    Ok(UndirectedGraph {
        nodes,
        edges,
        warnings,
    })
}

pub fn load_dimacs(path: impl AsRef<Path>) -> Result<UndirectedGraph> {
    let file = File::open(path.as_ref())?;
    parse_dimacs_edges(BufReader::new(file))
}
