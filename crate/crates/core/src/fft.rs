//! Discrete Fourier transforms.
//!
//! Forward transforms are unnormalized, `X[k] = Σ x[n] e^{-2πikn/N}`; the
//! inverse carries the `1/N`. Power-of-two lengths run an iterative radix-2
//! Cooley-Tukey kernel; every other length goes through Bluestein's chirp-z
//! algorithm on top of that kernel. [`dft_naive`] is the O(N²) reference.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{ComplexSpectrum, TimeSeries};
use crate::window::cos_sin_turns;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Radix2,
    Bluestein,
    Naive,
}

/// Precomputed transform of one fixed length.
///
/// Plans are immutable; the same plan may run on many threads at once.
#[derive(Debug, Clone)]
pub struct FftPlan {
    len: usize,
    kind: PlanKind,
}

#[derive(Debug, Clone)]
enum PlanKind {
    Radix2(Radix2),
    Bluestein(Box<Bluestein>),
    Naive(Vec<Complex64>),
}

#[derive(Debug, Clone)]
struct Radix2 {
    // e^{-2πik/n} for k in [0, n/2)
    twiddles: Vec<Complex64>,
    // position each input index lands on before the butterflies
    bit_reverse: Vec<u32>,
}

#[derive(Debug, Clone)]
struct Bluestein {
    inner: Radix2,
    inner_len: usize,
    // e^{-iπn²/N} for n in [0, N)
    chirp: Vec<Complex64>,
    // forward transform of the zero-padded conjugate chirp, pre-scaled by 1/M
    kernel: Vec<Complex64>,
}

impl FftPlan {
    /// Picks radix-2 for powers of two and Bluestein otherwise.
    pub fn new(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        let kind = if len.is_power_of_two() {
            PlanKind::Radix2(Radix2::new(len))
        } else {
            PlanKind::Bluestein(Box::new(Bluestein::new(len)))
        };
        Ok(Self { len, kind })
    }

    /// Builds a plan with an explicit strategy. Radix-2 requires a power of
    /// two length.
    pub fn with_strategy(len: usize, strategy: Strategy) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptyInput);
        }
        let kind = match strategy {
            Strategy::Radix2 if !len.is_power_of_two() => {
                return Err(Error::invalid(format!(
                    "radix-2 plan needs a power-of-two length, got {len}"
                )))
            }
            Strategy::Radix2 => PlanKind::Radix2(Radix2::new(len)),
            Strategy::Bluestein => PlanKind::Bluestein(Box::new(Bluestein::new(len))),
            Strategy::Naive => PlanKind::Naive((0..len).map(|k| unit_root(k, len)).collect()),
        };
        Ok(Self { len, kind })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn strategy(&self) -> Strategy {
        match self.kind {
            PlanKind::Radix2(_) => Strategy::Radix2,
            PlanKind::Bluestein(_) => Strategy::Bluestein,
            PlanKind::Naive(_) => Strategy::Naive,
        }
    }

    /// Forward transform in place.
    pub fn forward(&self, buf: &mut [Complex64]) -> Result<()> {
        self.check_len(buf.len())?;
        match &self.kind {
            PlanKind::Radix2(r) => r.run(buf),
            PlanKind::Bluestein(b) => b.run(buf),
            PlanKind::Naive(roots) => {
                let out = naive_with_roots(buf, roots);
                buf.copy_from_slice(&out);
            }
        }
        Ok(())
    }

    /// Inverse transform in place, including the `1/N` factor.
    pub fn inverse(&self, buf: &mut [Complex64]) -> Result<()> {
        self.check_len(buf.len())?;
        buf.iter_mut().for_each(|z| *z = z.conj());
        self.forward(buf)?;
        let scale = 1.0 / self.len as f64;
        buf.iter_mut().for_each(|z| *z = z.conj() * scale);
        Ok(())
    }

    fn check_len(&self, actual: usize) -> Result<()> {
        if actual != self.len {
            return Err(Error::LengthMismatch {
                expected: self.len,
                actual,
            });
        }
        Ok(())
    }
}

impl Radix2 {
    fn new(n: usize) -> Self {
        debug_assert!(n.is_power_of_two());
        let twiddles = (0..n / 2).map(|k| unit_root(k, n)).collect();
        let bits = n.trailing_zeros();
        let bit_reverse = (0..n as u32)
            .map(|i| {
                if bits == 0 {
                    0
                } else {
                    i.reverse_bits() >> (32 - bits)
                }
            })
            .collect();
        Self {
            twiddles,
            bit_reverse,
        }
    }

    fn run(&self, buf: &mut [Complex64]) {
        let n = buf.len();
        for (i, &j) in self.bit_reverse.iter().enumerate() {
            let j = j as usize;
            if i < j {
                buf.swap(i, j);
            }
        }
        let mut half = 1;
        while half < n {
            let stride = n / (2 * half);
            for block in buf.chunks_exact_mut(2 * half) {
                let (lo, hi) = block.split_at_mut(half);
                for (k, (a, b)) in lo.iter_mut().zip(hi.iter_mut()).enumerate() {
                    let t = *b * self.twiddles[k * stride];
                    *b = *a - t;
                    *a += t;
                }
            }
            half *= 2;
        }
    }
}

impl Bluestein {
    fn new(n: usize) -> Self {
        let inner_len = (2 * n - 1).next_power_of_two();
        let inner = Radix2::new(inner_len);
        // n² is reduced mod 2N before the trig call so large n keep full precision
        let two_n = 2 * n as u128;
        let chirp: Vec<Complex64> = (0..n)
            .map(|i| {
                let sq = ((i as u128) * (i as u128)) % two_n;
                let (c, s) = cos_sin_turns(sq as usize, 2 * n);
                Complex64::new(c, -s)
            })
            .collect();

        let mut kernel = vec![Complex64::new(0.0, 0.0); inner_len];
        kernel[0] = chirp[0].conj();
        for i in 1..n {
            kernel[i] = chirp[i].conj();
            kernel[inner_len - i] = chirp[i].conj();
        }
        inner.run(&mut kernel);
        let scale = 1.0 / inner_len as f64;
        kernel.iter_mut().for_each(|z| *z *= scale);

        Self {
            inner,
            inner_len,
            chirp,
            kernel,
        }
    }

    fn run(&self, buf: &mut [Complex64]) {
        let mut work = vec![Complex64::new(0.0, 0.0); self.inner_len];
        for ((w, x), c) in work.iter_mut().zip(buf.iter()).zip(&self.chirp) {
            *w = *x * c;
        }
        self.inner.run(&mut work);
        for (w, k) in work.iter_mut().zip(&self.kernel) {
            *w = (*w * k).conj();
        }
        // inverse via conjugation; 1/M is already folded into the kernel
        self.inner.run(&mut work);
        for ((out, w), c) in buf.iter_mut().zip(&work).zip(&self.chirp) {
            *out = w.conj() * c;
        }
    }
}

/// `e^{-2πik/n}`
fn unit_root(k: usize, n: usize) -> Complex64 {
    let (c, s) = cos_sin_turns(k, n);
    Complex64::new(c, -s)
}

fn naive_with_roots(x: &[Complex64], roots: &[Complex64]) -> Vec<Complex64> {
    let n = x.len();
    (0..n)
        .map(|k| {
            x.iter()
                .enumerate()
                .map(|(i, xi)| xi * roots[(k * i) % n])
                .sum()
        })
        .collect()
}

/// Direct O(N²) evaluation of the DFT sum.
pub fn dft_naive(x: &[Complex64]) -> Result<Vec<Complex64>> {
    if x.is_empty() {
        return Err(Error::EmptyInput);
    }
    let n = x.len();
    let roots: Vec<Complex64> = (0..n).map(|k| unit_root(k, n)).collect();
    Ok(naive_with_roots(x, &roots))
}

/// Forward FFT of an arbitrary-length sequence.
pub fn fft(x: &[Complex64]) -> Result<Vec<Complex64>> {
    let plan = FftPlan::new(x.len())?;
    let mut buf = x.to_vec();
    plan.forward(&mut buf)?;
    Ok(buf)
}

/// Inverse FFT, normalized by `1/N`.
pub fn ifft(spectrum: &[Complex64]) -> Result<Vec<Complex64>> {
    let plan = FftPlan::new(spectrum.len())?;
    let mut buf = spectrum.to_vec();
    plan.inverse(&mut buf)?;
    Ok(buf)
}

/// Forward FFT of a real signal, tagged with its sample rate.
pub fn spectrum(ts: &TimeSeries) -> Result<ComplexSpectrum> {
    let input: Vec<Complex64> = ts
        .samples()
        .iter()
        .map(|&x| Complex64::new(x, 0.0))
        .collect();
    ComplexSpectrum::new(fft(&input)?, ts.sample_rate_hz())
}

/// Frequencies of the `floor(n/2) + 1` non-negative bins of a length-`n`
/// transform.
pub fn rfft_freqs(n: usize, fs_hz: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::invalid(format!(
            "one-sided frequency axis needs n >= 2, got {n}"
        )));
    }
    Ok((0..=n / 2).map(|k| k as f64 * fs_hz / n as f64).collect())
}
