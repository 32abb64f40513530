use serde::Serialize;

use crate::{Error, Result};

/// Largest ground set (the lattice state has `2^N` amplitudes).
pub const MAX_GROUND: usize = 16;

/// A finite-domain constraint problem given by forbidden partial assignments.
///
/// Ground pair `(var, val)` has index `var · domain_size + val`; subsets of the
/// ground set are bitmasks over those indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CspInstance {
    num_vars: usize,
    domain_size: usize,
    nogoods: Vec<Vec<(usize, usize)>>,
    #[serde(skip)]
    nogood_masks: Vec<u32>,
}

impl CspInstance {
    pub fn new(
        num_vars: usize,
        domain_size: usize,
        nogoods: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        if num_vars == 0 || domain_size == 0 {
            return Err(Error::InvalidInput(
                "need at least one variable and one domain value".into(),
            ));
        }
        let ground = num_vars * domain_size;
        if ground > MAX_GROUND {
            return Err(Error::InvalidInput(format!(
                "ground set of {ground} pairs exceeds the limit of {MAX_GROUND}"
            )));
        }
        let mut normalized: Vec<Vec<(usize, usize)>> = Vec::with_capacity(nogoods.len());
        let mut masks = Vec::with_capacity(nogoods.len());
        for mut ng in nogoods {
            if ng.is_empty() {
                return Err(Error::InvalidInput("empty nogood".into()));
            }
            if let Some(&(var, val)) = ng
                .iter()
                .find(|&&(var, val)| var >= num_vars || val >= domain_size)
            {
                return Err(Error::InvalidInput(format!(
                    "nogood references {var}={val} outside {num_vars} vars × {domain_size} values"
                )));
            }
            ng.sort_unstable();
            ng.dedup();
            let mask = ng
                .iter()
                .fold(0u32, |m, &(var, val)| m | 1 << (var * domain_size + val));
            if !masks.contains(&mask) {
                masks.push(mask);
                normalized.push(ng);
            }
        }
        Ok(Self {
            num_vars,
            domain_size,
            nogoods: normalized,
            nogood_masks: masks,
        })
    }

    /// Vertex coloring: one nogood `{(u,c), (v,c)}` per edge and color.
    pub fn graph_coloring(
        num_vertices: usize,
        colors: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let mut nogoods = Vec::with_capacity(edges.len() * colors);
        for &(u, v) in edges {
            if u >= num_vertices || v >= num_vertices || u == v {
                return Err(Error::InvalidInput(format!("bad edge {u}-{v}")));
            }
            nogoods.extend((0..colors).map(|c| vec![(u, c), (v, c)]));
        }
        Self::new(num_vertices, colors, nogoods)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn ground_size(&self) -> usize {
        self.num_vars * self.domain_size
    }

    pub fn nogoods(&self) -> &[Vec<(usize, usize)>] {
        &self.nogoods
    }

    pub fn nogood_masks(&self) -> &[u32] {
        &self.nogood_masks
    }

    pub fn pair_index(&self, var: usize, val: usize) -> usize {
        var * self.domain_size + val
    }

    pub fn pair(&self, index: usize) -> (usize, usize) {
        (index / self.domain_size, index % self.domain_size)
    }

    /// Renders a subset as `{var=val, …}`.
    pub fn describe_set(&self, set: u32) -> String {
        let items: Vec<String> = (0..self.ground_size())
            .filter(|&i| set >> i & 1 == 1)
            .map(|i| {
                let (var, val) = self.pair(i);
                format!("{var}={val}")
            })
            .collect();
        format!("{{{}}}", items.join(", "))
    }

    /// Reads either the `csp` or the `graph` text format.
    ///
    /// ```text
    /// csp 3 2          graph 3 3
    /// 0=1 2=1          edge 0 1
    /// 1=0              edge 1 2
    /// ```
    ///
    /// Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
            .filter(|(_, l)| !l.trim().is_empty());
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing header line"))?;
        let htoks = tokens(header);
        if htoks.len() != 3 {
            return Err(Error::parse(
                hline,
                1,
                "header must be `csp <vars> <values>` or `graph <vertices> <colors>`",
            ));
        }
        let a = parse_usize(hline, htoks[1])?;
        let b = parse_usize(hline, htoks[2])?;
        match htoks[0].1 {
            "csp" => {
                let mut nogoods = Vec::new();
                for (ln, line) in lines {
                    let mut ng = Vec::new();
                    for (col, tok) in tokens(line) {
                        let (var, val) = tok.split_once('=').ok_or_else(|| {
                            Error::parse(ln, col, format!("expected var=val, found {tok:?}"))
                        })?;
                        let var = parse_usize(ln, (col, var))?;
                        let val = parse_usize(ln, (col + tok.find('=').unwrap() + 1, val))?;
                        if var >= a || val >= b {
                            return Err(Error::parse(ln, col, format!("{tok} out of range")));
                        }
                        ng.push((var, val));
                    }
                    nogoods.push(ng);
                }
                Self::new(a, b, nogoods).map_err(|e| Error::parse(hline, 1, e.to_string()))
            }
            "graph" => {
                let mut edges = Vec::new();
                for (ln, line) in lines {
                    let toks = tokens(line);
                    if toks.len() != 3 || toks[0].1 != "edge" {
                        return Err(Error::parse(ln, 1, "expected `edge <u> <v>`"));
                    }
                    let u = parse_usize(ln, toks[1])?;
                    let v = parse_usize(ln, toks[2])?;
                    if u >= a || v >= a || u == v {
                        return Err(Error::parse(ln, toks[1].0, format!("bad edge {u}-{v}")));
                    }
                    edges.push((u, v));
                }
                Self::graph_coloring(a, b, &edges).map_err(|e| Error::parse(hline, 1, e.to_string()))
            }
            other => Err(Error::parse(
                hline,
                1,
                format!("unknown format {other:?}, expected `csp` or `graph`"),
            )),
        }
    }
}

/// Whitespace-separated tokens with 1-based column numbers.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_usize(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line, col, format!("expected a non-negative integer, found {tok:?}")))
}

/// Consistency of every subset of the ground set.
#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyReport {
    ground_size: usize,
    num_vars: usize,
    consistent: Vec<bool>,
    conflicts: Vec<u32>,
    goods_per_level: Vec<usize>,
}

/// A set is inconsistent iff it contains a nogood or gives one variable two values.
pub fn consistency(instance: &CspInstance) -> ConsistencyReport {
    let n = instance.ground_size();
    let d = instance.domain_size;
    let var_masks: Vec<u32> = (0..instance.num_vars)
        .map(|v| ((1u32 << d) - 1) << (v * d))
        .collect();
    let size = 1usize << n;
    let mut consistent = Vec::with_capacity(size);
    let mut conflicts = Vec::with_capacity(size);
    let mut goods_per_level = vec![0; n + 1];
    for s in 0..size as u32 {
        let c = instance
            .nogood_masks
            .iter()
            .filter(|&&m| s & m == m)
            .count() as u32;
        let ok = c == 0 && var_masks.iter().all(|&m| (s & m).count_ones() <= 1);
        if ok {
            goods_per_level[s.count_ones() as usize] += 1;
        }
        consistent.push(ok);
        conflicts.push(c);
    }
    ConsistencyReport {
        ground_size: n,
        num_vars: instance.num_vars,
        consistent,
        conflicts,
        goods_per_level,
    }
}

impl ConsistencyReport {
    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn is_consistent(&self, set: u32) -> bool {
        self.consistent[set as usize]
    }

    /// Number of nogoods contained in `set`.
    pub fn conflict_count(&self, set: u32) -> u32 {
        self.conflicts[set as usize]
    }

    /// `N_goods` at level `j`.
    pub fn goods_at_level(&self, level: usize) -> usize {
        self.goods_per_level.get(level).copied().unwrap_or(0)
    }

    /// Complete consistent assignments: consistent sets with one pair per variable.
    pub fn is_solution(&self, set: u32) -> bool {
        set.count_ones() as usize == self.num_vars && self.consistent[set as usize]
    }

    pub fn solutions(&self) -> Vec<u32> {
        (0..self.consistent.len() as u32)
            .filter(|&s| self.is_solution(s))
            .collect()
    }

    pub fn solution_count(&self) -> usize {
        self.goods_at_level(self.num_vars)
    }

    /// Final lattice level `L` (complete assignments).
    pub fn final_level(&self) -> usize {
        self.num_vars
    }
}
