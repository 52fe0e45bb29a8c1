use super::{Grid1D, Grid2D, GHOST};

/// Flat access to the storage of a field, used by the time integrator.
pub trait FieldData: Clone + Send + Sync {
    fn values(&self) -> &[f64];
    fn values_mut(&mut self) -> &mut [f64];
}

/// Point values of a `N`-component system on a 1D grid plus ghost layers.
#[derive(Clone, Debug, PartialEq)]
pub struct Field1D<const N: usize> {
    pub grid: Grid1D,
    data: Vec<[f64; N]>,
}

impl<const N: usize> Field1D<N> {
    pub fn zeros(grid: Grid1D) -> Self {
        Self { grid, data: vec![[0.0; N]; grid.n + 2 * GHOST] }
    }

    pub fn from_fn(grid: Grid1D, mut f: impl FnMut(f64) -> [f64; N]) -> Self {
        let mut field = Self::zeros(grid);
        for i in 0..grid.n {
            field.data[i + GHOST] = f(grid.x(i));
        }
        field
    }

    pub fn n(&self) -> usize {
        self.grid.n
    }

    /// Value at point `i`, where `-3..0` and `n..n+3` address ghosts.
    #[inline]
    pub fn at(&self, i: isize) -> &[f64; N] {
        &self.data[(i + GHOST as isize) as usize]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize) -> &mut [f64; N] {
        &mut self.data[(i + GHOST as isize) as usize]
    }

    /// Interior plus ghosts, left to right.
    pub fn line(&self) -> &[[f64; N]] {
        &self.data
    }

    pub fn line_mut(&mut self) -> &mut [[f64; N]] {
        &mut self.data
    }

    pub fn interior(&self) -> &[[f64; N]] {
        &self.data[GHOST..GHOST + self.grid.n]
    }

    pub fn interior_mut(&mut self) -> &mut [[f64; N]] {
        let n = self.grid.n;
        &mut self.data[GHOST..GHOST + n]
    }

    /// Interior values of component `k`.
    pub fn component(&self, k: usize) -> Vec<f64> {
        self.interior().iter().map(|u| u[k]).collect()
    }
}

impl<const N: usize> FieldData for Field1D<N> {
    fn values(&self) -> &[f64] {
        self.data.as_flattened()
    }

    fn values_mut(&mut self) -> &mut [f64] {
        self.data.as_flattened_mut()
    }
}

/// Row-major (x fastest) point values on a 2D grid plus ghost layers.
#[derive(Clone, Debug, PartialEq)]
pub struct Field2D<const N: usize> {
    pub grid: Grid2D,
    data: Vec<[f64; N]>,
}

impl<const N: usize> Field2D<N> {
    pub fn zeros(grid: Grid2D) -> Self {
        let len = (grid.nx + 2 * GHOST) * (grid.ny + 2 * GHOST);
        Self { grid, data: vec![[0.0; N]; len] }
    }

    pub fn from_fn(grid: Grid2D, mut f: impl FnMut(f64, f64) -> [f64; N]) -> Self {
        let mut field = Self::zeros(grid);
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                *field.at_mut(i as isize, j as isize) = f(grid.x(i), grid.y(j));
            }
        }
        field
    }

    #[inline]
    pub fn stride(&self) -> usize {
        self.grid.nx + 2 * GHOST
    }

    #[inline]
    fn index(&self, i: isize, j: isize) -> usize {
        let g = GHOST as isize;
        ((i + g) + (j + g) * self.stride() as isize) as usize
    }

    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &[f64; N] {
        &self.data[self.index(i, j)]
    }

    #[inline]
    pub fn at_mut(&mut self, i: isize, j: isize) -> &mut [f64; N] {
        let k = self.index(i, j);
        &mut self.data[k]
    }

    /// Interior values of component `k`, row-major.
    pub fn component(&self, k: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.grid.nx * self.grid.ny);
        for j in 0..self.grid.ny as isize {
            for i in 0..self.grid.nx as isize {
                out.push(self.at(i, j)[k]);
            }
        }
        out
    }
}

impl<const N: usize> FieldData for Field2D<N> {
    fn values(&self) -> &[f64] {
        self.data.as_flattened()
    }

    fn values_mut(&mut self) -> &mut [f64] {
        self.data.as_flattened_mut()
    }
}
