//! Dyadic square addresses.

use core::fmt;

/// Deepest level a key may live at. Keeps `x` and `y` below `2^29` so a key
/// packs into 63 bits and every common-scale coordinate fits in a `u64`.
pub const MAX_LEVEL: u8 = 29;

/// One square of the dyadic grid at `level`, covering
/// `[x, x+1] × [y, y+1]` scaled by `2^-level`, with `y` increasing upward.
///
/// Field order makes the derived `Ord` the canonical `(level, x, y)` order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SquareKey {
    pub level: u8,
    pub x: u32,
    pub y: u32,
}

/// Which child of a split square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Quadrant {
    LowerLeft,
    LowerRight,
    UpperLeft,
    UpperRight,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant::LowerLeft,
        Quadrant::LowerRight,
        Quadrant::UpperLeft,
        Quadrant::UpperRight,
    ];

    fn offsets(self) -> (u32, u32) {
        match self {
            Quadrant::LowerLeft => (0, 0),
            Quadrant::LowerRight => (1, 0),
            Quadrant::UpperLeft => (0, 1),
            Quadrant::UpperRight => (1, 1),
        }
    }
}

/// The four sides of a square.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
    Bottom,
    Top,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Left, Side::Right, Side::Bottom, Side::Top];

    /// The two child quadrants that touch this side.
    pub fn children(self) -> [Quadrant; 2] {
        match self {
            Side::Left => [Quadrant::LowerLeft, Quadrant::UpperLeft],
            Side::Right => [Quadrant::LowerRight, Quadrant::UpperRight],
            Side::Bottom => [Quadrant::LowerLeft, Quadrant::LowerRight],
            Side::Top => [Quadrant::UpperLeft, Quadrant::UpperRight],
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Bottom => Side::Top,
            Side::Top => Side::Bottom,
        }
    }
}

impl SquareKey {
    pub const ROOT: SquareKey = SquareKey {
        level: 0,
        x: 0,
        y: 0,
    };

    /// Builds a key, checking the coordinate bounds.
    pub fn new(level: u8, x: u32, y: u32) -> Option<SquareKey> {
        let key = SquareKey { level, x, y };
        key.in_range().then_some(key)
    }

    /// `0 <= x, y < 2^level` and `level <= MAX_LEVEL`.
    pub fn in_range(&self) -> bool {
        self.level <= MAX_LEVEL && self.x < self.side_cells() && self.y < self.side_cells()
    }

    /// Number of cells along one side of the grid at this key's level.
    #[inline]
    pub fn side_cells(&self) -> u32 {
        1u32 << self.level
    }

    #[inline]
    pub fn parent(&self) -> Option<SquareKey> {
        (self.level > 0).then(|| SquareKey {
            level: self.level - 1,
            x: self.x >> 1,
            y: self.y >> 1,
        })
    }

    #[inline]
    pub fn child(&self, q: Quadrant) -> SquareKey {
        let (dx, dy) = q.offsets();
        SquareKey {
            level: self.level + 1,
            x: 2 * self.x + dx,
            y: 2 * self.y + dy,
        }
    }

    /// Children in quadrant order: lower-left, lower-right, upper-left, upper-right.
    pub fn children(&self) -> [SquareKey; 4] {
        Quadrant::ALL.map(|q| self.child(q))
    }

    /// Which quadrant of its parent this key occupies; `None` for the root.
    pub fn quadrant(&self) -> Option<Quadrant> {
        if self.level == 0 {
            return None;
        }
        Some(match (self.x & 1, self.y & 1) {
            (0, 0) => Quadrant::LowerLeft,
            (1, 0) => Quadrant::LowerRight,
            (0, _) => Quadrant::UpperLeft,
            _ => Quadrant::UpperRight,
        })
    }

    /// The ancestor at `level` (or `self` when the levels match).
    pub fn ancestor_at(&self, level: u8) -> Option<SquareKey> {
        (level <= self.level).then(|| {
            let shift = self.level - level;
            SquareKey {
                level,
                x: self.x >> shift,
                y: self.y >> shift,
            }
        })
    }

    /// True when `self` is a strict ancestor of `other`.
    pub fn is_strict_ancestor_of(&self, other: &SquareKey) -> bool {
        self.level < other.level && other.ancestor_at(self.level) == Some(*self)
    }

    /// Same-level neighbor across `side`, if it lies inside the unit square.
    pub fn neighbor(&self, side: Side) -> Option<SquareKey> {
        let n = self.side_cells();
        let (x, y) = match side {
            Side::Left => (self.x.checked_sub(1)?, self.y),
            Side::Right => (self.x + 1, self.y),
            Side::Bottom => (self.x, self.y.checked_sub(1)?),
            Side::Top => (self.x, self.y + 1),
        };
        (x < n && y < n).then_some(SquareKey {
            level: self.level,
            x,
            y,
        })
    }

    /// Same-level cell diagonally across the corner in quadrant direction `q`.
    pub fn diagonal(&self, q: Quadrant) -> Option<SquareKey> {
        let n = self.side_cells();
        let (dx, dy) = q.offsets();
        let x = if dx == 0 {
            self.x.checked_sub(1)?
        } else {
            self.x + 1
        };
        let y = if dy == 0 {
            self.y.checked_sub(1)?
        } else {
            self.y + 1
        };
        (x < n && y < n).then_some(SquareKey {
            level: self.level,
            x,
            y,
        })
    }

    /// Closed extent `[x0, x1] × [y0, y1]` in units of `2^-level` at the
    /// finer `level`.
    pub fn extent_at(&self, level: u8) -> [u64; 4] {
        debug_assert!(level >= self.level);
        let shift = level - self.level;
        let x0 = (self.x as u64) << shift;
        let y0 = (self.y as u64) << shift;
        let w = 1u64 << shift;
        [x0, x0 + w, y0, y0 + w]
    }

    /// Packs the key into a single word: `level << 58 | x << 29 | y`.
    pub fn packed(&self) -> u64 {
        ((self.level as u64) << 58) | ((self.x as u64) << 29) | self.y as u64
    }
}

impl fmt::Display for SquareKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.level, self.x, self.y)
    }
}
