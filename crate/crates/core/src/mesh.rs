//! Partitions of `[0, 1]`.
//!
//! A [`Mesh1D`] stores absolute node positions `x_0 = 0 < x_1 < ... < x_{N+1} = 1`;
//! cell widths `h_i = x_{i+1} - x_i` are derived on demand, so the widths
//! always partition the unit interval. Endpoints are assigned the literals
//! `0` and `1`, never computed.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh1D<T> {
    nodes: Vec<T>,
    /// Exact `1/num_cells` for meshes built by [`Mesh1D::uniform`].
    uniform_width: Option<T>,
}

impl<T: Real> Mesh1D<T> {
    /// `num_cells` equal cells of width `1/num_cells`.
    pub fn uniform(num_cells: usize) -> Result<Self> {
        if num_cells == 0 {
            return Err(Error::InvalidArgument("num_cells must be at least 1".into()));
        }
        let m = T::from_count(num_cells);
        let mut nodes: Vec<T> = (0..=num_cells).map(|i| T::from_count(i) / m).collect();
        nodes[0] = T::zero();
        nodes[num_cells] = T::one();
        Ok(Self {
            nodes,
            uniform_width: Some(T::one() / m),
        })
    }

    /// Uniform mesh whose interior nodes are shifted by a reproducible offset
    /// in `[-amplitude, amplitude) / num_cells`.
    ///
    /// The offset of node `i` is derived from `splitmix64(seed ^ splitmix64(i))`:
    /// the top 53 bits give `u` in `[0, 1)` and the offset is `(2u - 1) * amplitude / num_cells`.
    /// With `amplitude < 0.5` two neighbors can never cross.
    pub fn perturbed(num_cells: usize, amplitude: T, seed: u64) -> Result<Self> {
        if !(amplitude >= T::zero() && amplitude < T::lit(0.5)) {
            return Err(Error::InvalidArgument(format!(
                "perturbation amplitude must lie in [0, 0.5), got {amplitude}"
            )));
        }
        let base = Self::uniform(num_cells)?;
        if amplitude == T::zero() {
            return Ok(base);
        }
        let m = T::from_count(num_cells);
        let mut nodes = base.nodes;
        for (i, x) in nodes.iter_mut().enumerate().take(num_cells).skip(1) {
            let r = splitmix64(seed ^ splitmix64(i as u64));
            let u = T::lit((r >> 11) as f64 / (1u64 << 53) as f64);
            *x += (u + u - T::one()) * amplitude / m;
        }
        Self::from_nodes(nodes)
    }

    /// Validates an explicit node list.
    pub fn from_nodes(nodes: Vec<T>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidArgument("a mesh needs at least two nodes".into()));
        }
        if nodes[0] != T::zero() || nodes[nodes.len() - 1] != T::one() {
            return Err(Error::InvalidArgument(
                "mesh must start at exactly 0 and end at exactly 1".into(),
            ));
        }
        if let Some(i) = nodes.windows(2).position(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument(format!(
                "nodes must be strictly increasing (cell {i})"
            )));
        }
        Ok(Self {
            nodes,
            uniform_width: None,
        })
    }

    pub fn nodes(&self) -> &[T] {
        &self.nodes
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_cells(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform_width.is_some()
    }

    /// Endpoints `(x_i, x_{i+1})` of a cell.
    pub fn cell(&self, cell: usize) -> Result<(T, T)> {
        self.check_cell(cell)?;
        Ok((self.nodes[cell], self.nodes[cell + 1]))
    }

    /// Width `h_i` of a cell.
    pub fn width(&self, cell: usize) -> Result<T> {
        self.check_cell(cell)?;
        Ok(self.width_unchecked(cell))
    }

    fn width_unchecked(&self, cell: usize) -> T {
        match self.uniform_width {
            Some(h) => h,
            None => self.nodes[cell + 1] - self.nodes[cell],
        }
    }

    pub fn widths(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.num_cells()).map(|i| self.width_unchecked(i))
    }

    /// Mesh size `h = max_i h_i`.
    pub fn mesh_size(&self) -> T {
        match self.uniform_width {
            Some(h) => h,
            None => self.widths().fold(T::zero(), T::max),
        }
    }

    /// `x'_k = x_i + k h_i / n` for `k = 0..=n`, with both endpoints taken
    /// from the mesh.
    pub fn subdivision_points(&self, cell: usize, n: usize) -> Result<Vec<T>> {
        self.check_cell(cell)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be at least 1".into()));
        }
        let (a, b) = (self.nodes[cell], self.nodes[cell + 1]);
        let step = self.width_unchecked(cell) / T::from_count(n);
        let mut pts: Vec<T> = (0..=n).map(|k| a + T::from_count(k) * step).collect();
        pts[n] = b;
        Ok(pts)
    }

    /// Index of the cell containing `x`; nodes belong to the cell on their left
    /// (node 0 belongs to cell 0).
    pub fn locate(&self, x: T) -> Result<usize> {
        if !(x >= T::zero() && x <= T::one()) {
            return Err(Error::Domain(format!("{x} lies outside [0, 1]")));
        }
        let idx = self.nodes.partition_point(|&node| node < x);
        Ok(idx.saturating_sub(1).min(self.num_cells() - 1))
    }

    fn check_cell(&self, cell: usize) -> Result<()> {
        if cell >= self.num_cells() {
            return Err(Error::IndexOutOfRange {
                index: cell,
                len: self.num_cells(),
            });
        }
        Ok(())
    }

    /// Writes the nodes as CSV: header `node`, one node per line.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "node")?;
        for x in &self.nodes {
            writeln!(out, "{}", crate::report::sci(x.to_f64().unwrap_or(f64::NAN)))?;
        }
        Ok(())
    }

    /// Reads a node list written by [`Mesh1D::write_csv`].
    pub fn read_csv<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines.next().transpose()?;
        if header.as_deref().map(str::trim) != Some("node") {
            return Err(Error::Parse("expected header `node`".into()));
        }
        let mut nodes = Vec::new();
        for (lineno, line) in lines.enumerate() {
            let line = line?;
            let s = line.trim();
            if s.is_empty() {
                continue;
            }
            let v: f64 = s
                .parse()
                .map_err(|_| Error::Parse(format!("line {}: `{s}` is not a number", lineno + 2)))?;
            nodes.push(T::lit(v));
        }
        Self::from_nodes(nodes)
    }
}

/// SplitMix64 finalizer.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
