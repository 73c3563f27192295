use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::eq_core::IndexKey;
use crate::error::Result;
use crate::pou::{disjointify, AnchoredScheme, CoverCellPartition, CoverSet};
use crate::Point;

use super::sectioned::SectionedFunction;
use super::{ApproximantKind, ApproximantSequence};

type CellsFn = dyn Fn(usize) -> Result<CoverCellPartition> + Send + Sync;
type AnchorFn = dyn Fn(usize, &IndexKey) -> Result<Point> + Send + Sync;

/// `f_n(x, y) = f(x_{i(s),n}, y)` for `x` in the cell `A_{s,n}`.
///
/// Cell partitions are built once per `n` and cached.
pub struct PiecewiseAnchor<'a, Y> {
    f: &'a SectionedFunction<Y>,
    cells: Box<CellsFn>,
    anchor_of_cell: Box<AnchorFn>,
    cache: Mutex<BTreeMap<usize, Arc<CoverCellPartition>>>,
}

impl<'a, Y: 'static> PiecewiseAnchor<'a, Y> {
    pub fn new(
        f: &'a SectionedFunction<Y>,
        cells: impl Fn(usize) -> Result<CoverCellPartition> + Send + Sync + 'static,
        anchor_of_cell: impl Fn(usize, &IndexKey) -> Result<Point> + Send + Sync + 'static,
    ) -> Self {
        Self {
            f,
            cells: Box::new(cells),
            anchor_of_cell: Box::new(anchor_of_cell),
            cache: Mutex::new(BTreeMap::new()),
        }
    }

    /// Disjointified tiles of a scheme, each cell anchored at its own tile's
    /// anchor (`i(s) = s`).
    pub fn over_scheme_tiles(f: &'a SectionedFunction<Y>, scheme: &AnchoredScheme) -> Self {
        let for_cells = scheme.clone();
        let for_anchor = scheme.clone();
        Self::new(
            f,
            move |n| tile_cells(&for_cells, n),
            move |n, key| for_anchor.anchor(n, key),
        )
    }

    fn cells_for(&self, n: usize) -> Result<Arc<CoverCellPartition>> {
        let mut cache = self.cache.lock().expect("cell cache poisoned");
        if let Some(c) = cache.get(&n) {
            return Ok(Arc::clone(c));
        }
        let c = Arc::new((self.cells)(n)?);
        cache.insert(n, Arc::clone(&c));
        Ok(c)
    }

    pub fn eval(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        let cells = self.cells_for(n)?;
        let key = cells.cell_of(x)?;
        let a = (self.anchor_of_cell)(n, key)?;
        Ok(self.f.eval(&a, y))
    }
}

impl<Y: Send + Sync + 'static> ApproximantSequence<Y> for PiecewiseAnchor<'_, Y> {
    fn kind(&self) -> ApproximantKind {
        ApproximantKind::PiecewiseAnchor
    }

    fn term(&self, n: usize, x: &[f64], y: &Y) -> Result<Point> {
        self.eval(n, x, y)
    }
}

/// The supports of the scheme's `n`-th partition, in key order, made disjoint.
pub fn tile_cells(scheme: &AnchoredScheme, n: usize) -> Result<CoverCellPartition> {
    let fam = scheme.partition(n)?;
    let cover: Vec<CoverSet> = fam
        .keys()
        .filter_map(|k| fam.support(&k).map(|s| CoverSet::from_support(k, s)))
        .collect();
    disjointify(cover, &[])
}

/// The `n`-th piecewise-anchor approximant as a plain two-variable map.
pub fn piecewise_anchor<'a, Y: 'static>(
    f: &'a SectionedFunction<Y>,
    cells: CoverCellPartition,
    anchor_of_cell: impl Fn(&IndexKey) -> Result<Point> + 'a,
) -> impl Fn(&[f64], &Y) -> Result<Point> + 'a {
    move |x, y| {
        let key = cells.cell_of(x)?;
        let a = anchor_of_cell(key)?;
        Ok(f.eval(&a, y))
    }
}
