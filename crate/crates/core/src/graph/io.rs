//! Edge-list text and binary CSR file formats.
//!
//! Edge list: a header line `n m` followed by `m` lines `u v w`, ASCII
//! decimal, LF-terminated.
//!
//! Binary CSR: the 6-byte magic `RGCSR1`, then little-endian `u64 n`,
//! `u64 m`, `rowptr` as `u64 x (n+1)`, `col` as `u32 x m`, `val` as
//! `u32 x m`.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, GraphError};

pub const CSR_MAGIC: &[u8; 6] = b"RGCSR1";

/// Parses the edge-list format. Duplicates collapse to the minimum weight
/// and self-loops are dropped.
pub fn load_edge_list<R: Read>(source: R) -> Result<Graph, GraphError> {
    let reader = BufReader::new(source);
    let mut header: Option<(usize, usize)> = None;
    let mut arcs = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_ascii_whitespace().collect();
        let parse = |s: &str, what: &str| -> Result<u64, GraphError> {
            s.parse::<u64>().map_err(|_| GraphError::Parse {
                line: line_no,
                message: format!("{what} `{s}` is not a non-negative integer"),
            })
        };
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "expected header `n m`".into(),
                    });
                }
                let n = parse(fields[0], "vertex count")? as usize;
                let m = parse(fields[1], "edge count")? as usize;
                if n > u32::MAX as usize {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "vertex count exceeds 32-bit ids".into(),
                    });
                }
                header = Some((n, m));
                arcs.reserve(m);
            }
            Some((n, _)) => {
                if fields.len() != 3 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: "expected `u v w`".into(),
                    });
                }
                let u = parse(fields[0], "source")?;
                let v = parse(fields[1], "destination")?;
                let w = parse(fields[2], "weight")?;
                for id in [u, v] {
                    if id >= n as u64 {
                        return Err(GraphError::VertexOutOfRange { id, n });
                    }
                }
                if w >= u32::MAX as u64 {
                    return Err(GraphError::Parse {
                        line: line_no,
                        message: format!("weight {w} is not below the INF sentinel"),
                    });
                }
                arcs.push((u as u32, v as u32, w as u32));
            }
        }
    }

    let (n, m) = header.ok_or(GraphError::Parse {
        line: 0,
        message: "missing header".into(),
    })?;
    if arcs.len() != m {
        return Err(GraphError::Parse {
            line: 1,
            message: format!("header declares {m} edges, found {}", arcs.len()),
        });
    }
    Graph::from_edges(n, arcs)
}

pub fn write_edge_list<W: Write>(g: &Graph, sink: W) -> io::Result<()> {
    let mut out = BufWriter::new(sink);
    writeln!(out, "{} {}", g.n(), g.edge_count())?;
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}")?;
    }
    out.flush()
}

pub fn write_csr<W: Write>(g: &Graph, sink: W) -> io::Result<()> {
    let mut out = BufWriter::new(sink);
    out.write_all(CSR_MAGIC)?;
    out.write_all(&(g.n() as u64).to_le_bytes())?;
    out.write_all(&(g.edge_count() as u64).to_le_bytes())?;
    for &p in g.rowptr() {
        out.write_all(&(p as u64).to_le_bytes())?;
    }
    for &c in g.col() {
        out.write_all(&c.to_le_bytes())?;
    }
    for &w in g.val() {
        out.write_all(&w.to_le_bytes())?;
    }
    out.flush()
}

pub fn read_csr<R: Read>(source: R) -> Result<Graph, GraphError> {
    let mut input = BufReader::new(source);
    let mut magic = [0u8; 6];
    input.read_exact(&mut magic)?;
    if &magic != CSR_MAGIC {
        return Err(GraphError::InvalidCsr("bad magic".into()));
    }
    let n = read_u64(&mut input)? as usize;
    let m = read_u64(&mut input)? as usize;
    let rowptr = (0..=n)
        .map(|_| read_u64(&mut input).map(|p| p as usize))
        .collect::<io::Result<Vec<_>>>()?;
    let col = (0..m).map(|_| read_u32(&mut input)).collect::<io::Result<Vec<_>>>()?;
    let val = (0..m).map(|_| read_u32(&mut input)).collect::<io::Result<Vec<_>>>()?;
    Graph::from_raw_parts(n, rowptr, col, val)
}

/// Serialized size of `g` in the binary CSR format.
pub fn csr_byte_len(n: usize, m: usize) -> u64 {
    (CSR_MAGIC.len() + 16 + 8 * (n + 1) + 8 * m) as u64
}

/// Reads a graph file, picking the format from the leading bytes.
pub fn read_graph_file(path: &Path) -> Result<Graph, GraphError> {
    let mut file = File::open(path)?;
    let mut head = [0u8; 6];
    let got = read_prefix(&mut file, &mut head)?;
    let file = File::open(path)?;
    if got == head.len() && &head == CSR_MAGIC {
        read_csr(file)
    } else {
        load_edge_list(file)
    }
}

fn read_prefix(file: &mut File, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match file.read(&mut buf[filled..])? {
            0 => break,
            k => filled += k,
        }
    }
    Ok(filled)
}

fn read_u64<R: Read>(r: &mut R) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_u32<R: Read>(r: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}
