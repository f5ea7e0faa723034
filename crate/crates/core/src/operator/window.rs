use super::coeff::Support;

/// Symmetric index window `[-M, M]` used to truncate `H` for dense work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexWindow {
    half_width: u32,
}

impl IndexWindow {
    pub fn new(half_width: u32) -> Self {
        IndexWindow { half_width }
    }

    pub fn half_width(&self) -> u32 {
        self.half_width
    }

    pub fn dim(&self) -> usize {
        2 * self.half_width as usize + 1
    }

    pub fn contains(&self, j: i64) -> bool {
        j.unsigned_abs() <= self.half_width as u64
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        let m = self.half_width as i64;
        -m..=m
    }

    /// Row/column position of basis index `j`; `j` must be inside.
    pub fn position(&self, j: i64) -> usize {
        debug_assert!(self.contains(j));
        (j + self.half_width as i64) as usize
    }

    pub fn as_support(&self) -> Support {
        let m = self.half_width as i64;
        Support::new(-m, m)
    }
}

/// Orthogonal projection `P_m` onto `L_m = span{e_-m, …, e_m}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Projection {
    m: u32,
}

impl Projection {
    pub fn new(m: u32) -> Self {
        Projection { m }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn rank(&self) -> usize {
        2 * self.m as usize + 1
    }

    pub fn range(&self) -> Support {
        let m = self.m as i64;
        Support::new(-m, m)
    }
}
