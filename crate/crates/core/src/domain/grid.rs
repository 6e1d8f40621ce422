//! Grid coordinates, directions and a compact cell set.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest supported grid side. Cell sets are packed into a `u64`.
pub const MAX_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "(usize, usize)", into = "(usize, usize)")]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Neighbor in `dir`, or `None` when it would leave an `size`×`size` grid.
    pub fn step(self, dir: Direction, size: usize) -> Option<Cell> {
        let (dr, dc) = dir.delta();
        let row = self.row as isize + dr;
        let col = self.col as isize + dc;
        if row < 0 || col < 0 || row >= size as isize || col >= size as isize {
            None
        } else {
            Some(Cell::new(row as usize, col as usize))
        }
    }

    pub fn manhattan(self, other: Cell) -> usize {
        self.row.abs_diff(other.row) + self.col.abs_diff(other.col)
    }

    pub(crate) fn bit(self) -> u64 {
        debug_assert!(self.row < MAX_SIZE && self.col < MAX_SIZE);
        1u64 << (self.row * MAX_SIZE + self.col)
    }

    pub(crate) fn index(self, size: usize) -> usize {
        self.row * size + self.col
    }
}

impl From<(usize, usize)> for Cell {
    fn from((row, col): (usize, usize)) -> Self {
        Cell::new(row, col)
    }
}

impl From<Cell> for (usize, usize) {
    fn from(c: Cell) -> Self {
        (c.row, c.col)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// Movement direction. The declaration order is the canonical tie-break order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
    Left,
    Right,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Up, Direction::Down, Direction::Left, Direction::Right];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Down => (1, 0),
            Direction::Left => (0, -1),
            Direction::Right => (0, 1),
        }
    }

    pub fn reverse(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Left => "left",
            Direction::Right => "right",
        };
        f.write_str(s)
    }
}

/// Set of cells of a grid with side at most [`MAX_SIZE`], stored as a bitmask.
///
/// Serialized as a sorted list of `[row, col]` pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CellSet(u64);

impl CellSet {
    pub const EMPTY: CellSet = CellSet(0);

    pub fn contains(self, cell: Cell) -> bool {
        self.0 & cell.bit() != 0
    }

    pub fn insert(&mut self, cell: Cell) -> bool {
        let fresh = !self.contains(cell);
        self.0 |= cell.bit();
        fresh
    }

    pub fn remove(&mut self, cell: Cell) {
        self.0 &= !cell.bit();
    }

    pub fn union(self, other: CellSet) -> CellSet {
        CellSet(self.0 | other.0)
    }

    pub fn difference(self, other: CellSet) -> CellSet {
        CellSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: CellSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Cells in row-major order.
    pub fn iter(self) -> impl Iterator<Item = Cell> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(Cell::new(i / MAX_SIZE, i % MAX_SIZE))
        })
    }
}

impl FromIterator<Cell> for CellSet {
    fn from_iter<I: IntoIterator<Item = Cell>>(iter: I) -> Self {
        let mut set = CellSet::EMPTY;
        for c in iter {
            set.insert(c);
        }
        set
    }
}

impl Serialize for CellSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for CellSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let cells = Vec::<Cell>::deserialize(deserializer)?;
        if let Some(bad) = cells.iter().find(|c| c.row >= MAX_SIZE || c.col >= MAX_SIZE) {
            return Err(serde::de::Error::custom(format!("cell {bad} outside the supported grid")));
        }
        Ok(cells.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_stays_inside() {
        let c = Cell::new(0, 0);
        assert_eq!(c.step(Direction::Up, 4), None);
        assert_eq!(c.step(Direction::Left, 4), None);
        assert_eq!(c.step(Direction::Down, 4), Some(Cell::new(1, 0)));
        assert_eq!(Cell::new(3, 3).step(Direction::Right, 4), None);
    }

    #[test]
    fn cell_set_roundtrip() {
        let set: CellSet = [Cell::new(7, 7), Cell::new(0, 1), Cell::new(3, 2)].into_iter().collect();
        assert_eq!(set.len(), 3);
        let cells: Vec<_> = set.iter().collect();
        assert_eq!(cells, vec![Cell::new(0, 1), Cell::new(3, 2), Cell::new(7, 7)]);
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, "[[0,1],[3,2],[7,7]]");
        let back: CellSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
    }

    #[test]
    fn reverse_is_involution() {
        for d in Direction::ALL {
            assert_eq!(d.reverse().reverse(), d);
            assert_ne!(d.reverse(), d);
        }
    }
}
