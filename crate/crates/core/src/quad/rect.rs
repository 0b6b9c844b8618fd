use std::fmt;

use crate::interval::Interval;

/// Which of the two vanishing edges of the quadrant a cell touches.
///
/// In quadrant coordinates `(ξ, ζ) ∈ [0, 1/2]²` the integrand base vanishes
/// on `ξ = 0` (left) and `ζ = 0` (bottom).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RectClass {
    /// Both edges: the corner cell.
    S11,
    /// Bottom edge only.
    S01,
    /// Left edge only.
    S10,
    /// Neither.
    S00,
}

impl RectClass {
    /// Powers `(a, b)` of the monomial `ξ^a ζ^b` factored out of the base.
    pub fn vanishing_orders(self) -> (usize, usize) {
        match self {
            RectClass::S11 => (1, 1),
            RectClass::S01 => (0, 1),
            RectClass::S10 => (1, 0),
            RectClass::S00 => (0, 0),
        }
    }
}

/// Closed cell `[x0, x1] × [y0, y1]` with binary64 corners.
///
/// Neighbouring cells share the same corner values, so a list of cells
/// tiles its region exactly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

/// One end of a cell in local coordinates, enclosed because `x - x_e`
/// need not be representable.
pub type Endpoint = Interval;

impl Rect {
    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Self {
        assert!(x0 < x1 && y0 < y1, "degenerate cell");
        Rect { x0, x1, y0, y1 }
    }

    pub fn class(&self) -> RectClass {
        match (self.x0 == 0.0, self.y0 == 0.0) {
            (true, true) => RectClass::S11,
            (false, true) => RectClass::S01,
            (true, false) => RectClass::S10,
            (false, false) => RectClass::S00,
        }
    }

    /// Corner, bottom-edge midpoint, left-edge midpoint or centre.
    pub fn expansion_point(&self) -> (f64, f64) {
        let xm = 0.5 * (self.x0 + self.x1);
        let ym = 0.5 * (self.y0 + self.y1);
        match self.class() {
            RectClass::S11 => (0.0, 0.0),
            RectClass::S01 => (xm, 0.0),
            RectClass::S10 => (0.0, ym),
            RectClass::S00 => (xm, ym),
        }
    }

    /// Local `s = ξ - ξ_e` and `t = ζ - ζ_e` ranges as enclosed endpoints.
    pub fn local_spans(&self) -> ((Endpoint, Endpoint), (Endpoint, Endpoint)) {
        let (xe, ye) = self.expansion_point();
        let d = |a: f64, e: f64| Interval::point(a) - Interval::point(e);
        (
            (d(self.x0, xe), d(self.x1, xe)),
            (d(self.y0, ye), d(self.y1, ye)),
        )
    }

    /// Local domain `D_s × D_t` of the cell's Taylor models.
    pub fn local_domain(&self) -> (Interval, Interval) {
        let ((s0, s1), (t0, t1)) = self.local_spans();
        (s0.hull(s1), t0.hull(t1))
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    /// Halves across the longer edge; ties split in `x`.
    pub fn bisect(&self) -> (Rect, Rect) {
        if self.x1 - self.x0 >= self.y1 - self.y0 {
            let m = 0.5 * (self.x0 + self.x1);
            (Rect { x1: m, ..*self }, Rect { x0: m, ..*self })
        } else {
            let m = 0.5 * (self.y0 + self.y1);
            (Rect { y1: m, ..*self }, Rect { y0: m, ..*self })
        }
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:?}, {:?}]x[{:?}, {:?}]",
            self.x0, self.x1, self.y0, self.y1
        )
    }
}

/// Image of `[0, 1/2]²` in the unit square: `x = ξ` or `x = 1 - ξ`, and
/// likewise for `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Quadrant {
    pub reflect_x: bool,
    pub reflect_y: bool,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [
        Quadrant {
            reflect_x: false,
            reflect_y: false,
        },
        Quadrant {
            reflect_x: true,
            reflect_y: false,
        },
        Quadrant {
            reflect_x: false,
            reflect_y: true,
        },
        Quadrant {
            reflect_x: true,
            reflect_y: true,
        },
    ];

    /// Sign `σ` with `sin(kπ x) = σ sin(kπ ξ)`: `(-1)^(k+1)` under reflection.
    pub fn mode_sign(self, kx: usize, ky: usize) -> f64 {
        let sx = if self.reflect_x && kx.is_multiple_of(2) {
            -1.0
        } else {
            1.0
        };
        let sy = if self.reflect_y && ky.is_multiple_of(2) {
            -1.0
        } else {
            1.0
        };
        sx * sy
    }

    pub fn to_global(self, xi: f64, zeta: f64) -> (f64, f64) {
        (
            if self.reflect_x { 1.0 - xi } else { xi },
            if self.reflect_y { 1.0 - zeta } else { zeta },
        )
    }
}

/// How the four quadrants are covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadrantMode {
    /// Integrate one quadrant and multiply by 4. Sound when every series
    /// involved has only odd modes, which makes all quadrants congruent.
    Symmetric,
    /// Integrate each quadrant separately and add in fixed order.
    All,
}

/// Cells tiling `[0, 1/2]²` plus the quadrant cover and the Taylor degree.
///
/// The quadrant is cut into a uniform `grid × grid` mesh of width
/// `h = 1/(2 grid)`. The first column and row are further split
/// geometrically into `layers + 1` strips `[h/2^k, h/2^(k-1)]` and
/// `[0, h/2^layers]`, so only the thinnest strip touches a vanishing edge.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub grid: usize,
    pub layers: usize,
    /// Taylor degree of the cell models.
    pub degree: usize,
    /// How many times a cell failing the positivity check may be bisected.
    pub max_refine: usize,
    pub mode: QuadrantMode,
    cells: Vec<Rect>,
}

impl Subdivision {
    pub fn new(grid: usize, layers: usize, degree: usize) -> Self {
        assert!(grid >= 1 && degree >= 1);
        let n = 2 * grid;
        let mut cuts: Vec<f64> = Vec::new();
        cuts.push(0.0);
        let h = 1.0 / n as f64;
        for k in (0..layers).rev() {
            cuts.push(h / 2f64.powi(k as i32 + 1));
        }
        for k in 1..=grid {
            cuts.push(k as f64 / n as f64);
        }
        debug_assert_eq!(*cuts.last().unwrap(), 0.5);
        let mut cells = Vec::with_capacity((cuts.len() - 1).pow(2));
        for xs in cuts.windows(2) {
            for ys in cuts.windows(2) {
                cells.push(Rect::new(xs[0], xs[1], ys[0], ys[1]));
            }
        }
        Subdivision {
            grid,
            layers,
            degree,
            max_refine: 6,
            mode: QuadrantMode::Symmetric,
            cells,
        }
    }

    pub fn with_mode(mut self, mode: QuadrantMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_max_refine(mut self, depth: usize) -> Self {
        self.max_refine = depth;
        self
    }

    pub fn with_degree(mut self, degree: usize) -> Self {
        self.degree = degree;
        self
    }

    pub fn cells(&self) -> &[Rect] {
        &self.cells
    }

    /// Quadrants to integrate and the factor applied to their sum.
    pub fn quadrants(&self) -> (&'static [Quadrant], f64) {
        match self.mode {
            QuadrantMode::Symmetric => (&Quadrant::ALL[..1], 4.0),
            QuadrantMode::All => (&Quadrant::ALL[..], 1.0),
        }
    }
}
