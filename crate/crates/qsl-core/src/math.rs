//! Scalar float helpers usable with or without `std`.
//!
//! With `std` these forward to the inherent `f64` methods; without it they
//! call `libm`. Code elsewhere in the crate uses these instead of the
//! inherent methods so the whole crate builds under `no_std`.

use num_complex::Complex64;

macro_rules! fwd {
    ($(#[$doc:meta] $name:ident => $libm:ident),* $(,)?) => {
        $(
            #[$doc]
            #[inline]
            pub fn $name(x: f64) -> f64 {
                #[cfg(feature = "std")]
                {
                    x.$name()
                }
                #[cfg(not(feature = "std"))]
                {
                    libm::$libm(x)
                }
            }
        )*
    };
}

fwd! {
    /// Natural exponential.
    exp => exp,
    /// Natural logarithm.
    ln => log,
    /// Square root.
    sqrt => sqrt,
    /// Sine.
    sin => sin,
    /// Cosine.
    cos => cos,
    /// Inverse cosine.
    acos => acos,
    /// Absolute value.
    abs => fabs,
}

/// `e^{i theta}` as a complex number.
#[inline]
pub fn cis(theta: f64) -> Complex64 {
    Complex64::new(cos(theta), sin(theta))
}

/// `sqrt(x^2 + y^2)` without intermediate overflow.
#[inline]
pub fn hypot(x: f64, y: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        x.hypot(y)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::hypot(x, y)
    }
}

/// Four-quadrant arctangent of `y/x`.
#[inline]
pub fn atan2(y: f64, x: f64) -> f64 {
    #[cfg(feature = "std")]
    {
        y.atan2(x)
    }
    #[cfg(not(feature = "std"))]
    {
        libm::atan2(y, x)
    }
}

/// `ln(n!)` by direct summation. Exact for `n <= 20` well past f64 precision;
/// callers that need many values should build an [`LnFactorial`] table.
pub fn ln_factorial(n: usize) -> f64 {
    let mut acc = 0.0;
    for k in 2..=n {
        acc += ln(k as f64);
    }
    acc
}

/// Cumulative table of `ln(n!)` for `n = 0..=max_n`.
#[derive(Debug, Clone)]
pub struct LnFactorial {
    table: alloc::vec::Vec<f64>,
}

impl LnFactorial {
    pub fn up_to(max_n: usize) -> Self {
        let mut table = alloc::vec::Vec::with_capacity(max_n + 1);
        let mut acc = 0.0;
        table.push(0.0);
        for k in 1..=max_n {
            acc += ln(k as f64);
            table.push(acc);
        }
        Self { table }
    }

    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        self.table[n]
    }

    #[inline]
    pub fn max_n(&self) -> usize {
        self.table.len() - 1
    }
}
