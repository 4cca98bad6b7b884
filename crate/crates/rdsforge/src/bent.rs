//! Boolean-function analysis: Walsh spectra, bentness, quadratic-form
//! extraction, rank classification, and the graph difference-set criterion
//! that ties bent functions to the image sets produced by the function
//! families.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FieldElem, FieldSpec};
use crate::rds::{check_rds, difference_counts, RdsReport};

/// A Boolean function F_2^m -> F_2 as 2^m bits; position u (read as the
/// bitmask x_1..x_m, bit i-1 = x_i) holds F(u).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruthTable {
    m: u32,
    bits: Vec<u8>,
}

impl TruthTable {
    pub fn from_bits(m: u32, bits: Vec<u8>) -> Result<TruthTable> {
        if m == 0 || m > 24 {
            return Err(Error::BadTable(format!("unsupported variable count {m}")));
        }
        if bits.len() != 1 << m {
            return Err(Error::BadTable(format!(
                "expected {} bits, got {}",
                1usize << m,
                bits.len()
            )));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::BadTable("entries must be 0 or 1".into()));
        }
        Ok(TruthTable { m, bits })
    }

    pub fn from_fn(m: u32, f: impl FnMut(u32) -> u8) -> TruthTable {
        let bits = (0..1u32 << m).map(f).collect();
        TruthTable { m, bits }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, u: u32) -> u8 {
        self.bits[u as usize]
    }

    pub fn as_bits(&self) -> &[u8] {
        &self.bits
    }
}

impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            m: u32,
            bits: &'a [u8],
        }
        Wire { m: self.m, bits: &self.bits }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            m: u32,
            bits: Vec<u8>,
        }
        let w = Wire::deserialize(de)?;
        TruthTable::from_bits(w.m, w.bits).map_err(D::Error::custom)
    }
}

/// Walsh spectrum W(u) = sum over x of (-1)^(F(x) + <u, x>).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalshSpectrum {
    pub values: Vec<i64>,
}

/// Fast Walsh-Hadamard transform, O(m * 2^m) butterfly.
pub fn walsh(f: &TruthTable) -> WalshSpectrum {
    let mut v: Vec<i64> = f
        .as_bits()
        .iter()
        .map(|&b| if b == 0 { 1 } else { -1 })
        .collect();
    let mut h = 1;
    while h < v.len() {
        for chunk in v.chunks_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for i in 0..h {
                let (x, y) = (lo[i], hi[i]);
                lo[i] = x + y;
                hi[i] = x - y;
            }
        }
        h <<= 1;
    }
    WalshSpectrum { values: v }
}

/// True iff every Walsh value has absolute value 2^(m/2). Bent functions
/// only exist for even m, so odd m is always false.
pub fn is_bent(f: &TruthTable) -> bool {
    if !f.m().is_multiple_of(2) {
        return false;
    }
    let flat = 1i64 << (f.m() / 2);
    walsh(f).values.iter().all(|&w| w.abs() == flat)
}

/// Minimum Hamming distance to the 2^(m+1) affine functions,
/// 2^(m-1) - max|W|/2.
pub fn distance_to_affine(f: &TruthTable) -> u64 {
    let max = walsh(f).values.iter().map(|w| w.unsigned_abs()).max().unwrap();
    (1u64 << (f.m() - 1)) - max / 2
}

/// The Boolean function extracted from the trace-gated linear family: with
/// basis {a^(-1), w_1, ..., w_(n-1)} (the deterministic completed basis) and
/// x = sum x_i w_i, returns F(x_1, ..., x_(n-1)) = Tr(a^3 x^3) as a table on
/// n-1 variables.
pub fn bent_from_apn(spec: FieldSpec, a: FieldElem) -> Result<TruthTable> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    if a == 0 {
        return Err(Error::ZeroParameter("a"));
    }
    let basis = spec.complete_basis(spec.inv(a)?)?;
    let a3 = spec.pow(a, 3);
    let m = spec.n() - 1;
    Ok(TruthTable::from_fn(m, |u| {
        let x = expand(&basis[1..], u);
        spec.trace(spec.mul(a3, spec.pow(x, 3))) as u8
    }))
}

/// XOR of the basis vectors selected by the bits of u.
fn expand(basis: &[FieldElem], u: u32) -> FieldElem {
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| u >> i & 1 != 0)
        .fold(0, |acc, (_, &b)| acc ^ b)
}

/// A quadratic form sum a_ij x_i x_j over F_2 (indices 1-based in the
/// classical notation; stored 0-based). Diagonal entries contribute linear
/// terms since x_i^2 = x_i.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    m: u32,
    /// Row-major m*m bit matrix.
    coeffs: Vec<u8>,
}

impl QuadraticForm {
    pub fn new(m: u32, coeffs: Vec<u8>) -> Result<QuadraticForm> {
        if coeffs.len() != (m * m) as usize || coeffs.iter().any(|&c| c > 1) {
            return Err(Error::BadTable("coefficient matrix must be m*m bits".into()));
        }
        Ok(QuadraticForm { m, coeffs })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn coeff(&self, i: usize, j: usize) -> u8 {
        self.coeffs[i * self.m as usize + j]
    }
}

/// Coefficients a_ij = Tr(b_i^2 b_j) with b_i = a * w_i over the same basis
/// as [`bent_from_apn`]; evaluating the form reproduces that truth table.
pub fn quad_coeffs(spec: FieldSpec, a: FieldElem) -> Result<QuadraticForm> {
    if spec.n().is_multiple_of(2) {
        return Err(Error::EvenDegree { n: spec.n() });
    }
    if a == 0 {
        return Err(Error::ZeroParameter("a"));
    }
    let basis = spec.complete_basis(spec.inv(a)?)?;
    let b: Vec<FieldElem> = basis[1..].iter().map(|&w| spec.mul(a, w)).collect();
    let m = spec.n() - 1;
    let mut coeffs = Vec::with_capacity((m * m) as usize);
    for i in 0..m as usize {
        for j in 0..m as usize {
            coeffs.push(spec.trace(spec.mul(spec.sq(b[i]), b[j])) as u8);
        }
    }
    QuadraticForm::new(m, coeffs)
}

/// Pointwise evaluation of the form over F_2^m.
pub fn eval_quadratic(q: &QuadraticForm) -> TruthTable {
    let m = q.m() as usize;
    TruthTable::from_fn(q.m(), |u| {
        let mut acc = 0u8;
        for i in 0..m {
            if u >> i & 1 == 0 {
                continue;
            }
            for j in 0..m {
                if u >> j & 1 != 0 {
                    acc ^= q.coeff(i, j);
                }
            }
        }
        acc
    })
}

/// F_2-rank of the Gram matrix of B(x, y) = F(x+y) + F(x) + F(y) + F(0).
///
/// The Gram matrix is read off the unit vectors and then verified against
/// the full evaluation of B over every input pair; any mismatch means F has
/// algebraic degree above 2 and is reported as an error with a witness pair.
/// For quadratic F the rank is a complete affine invariant: F is bent iff
/// the rank equals m.
pub fn bilinear_rank(f: &TruthTable) -> Result<u32> {
    let m = f.m() as usize;
    let size = f.len();
    let f0 = f.get(0);
    // gram[i] is row i as a bitmask over j
    let mut gram = vec![0u32; m];
    for (i, row) in gram.iter_mut().enumerate() {
        for j in 0..m {
            let (ei, ej) = (1u32 << i, 1u32 << j);
            let b = f.get(ei ^ ej) ^ f.get(ei) ^ f.get(ej) ^ f0;
            *row |= u32::from(b) << j;
        }
    }
    // gy[y] = G*y as a column bitmask over i
    let gy: Vec<u32> = (0..size as u32)
        .map(|y| {
            let mut col = 0u32;
            for (i, &row) in gram.iter().enumerate() {
                col |= ((row & y).count_ones() & 1) << i;
            }
            col
        })
        .collect();
    for x in 0..size as u32 {
        for y in 0..size as u32 {
            let direct = f.get(x ^ y) ^ f.get(x) ^ f.get(y) ^ f0;
            let extended = ((x & gy[y as usize]).count_ones() & 1) as u8;
            if direct != extended {
                return Err(Error::NotQuadratic { x, y });
            }
        }
    }
    Ok(rank_f2(&mut gram))
}

fn rank_f2(rows: &mut [u32]) -> u32 {
    let mut rank = 0;
    for bit in (0..32).rev() {
        if let Some(pos) = (rank as usize..rows.len()).find(|&r| rows[r] >> bit & 1 != 0) {
            rows.swap(rank as usize, pos);
            let pivot = rows[rank as usize];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank as usize && *row >> bit & 1 != 0 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
    }
    rank
}

/// Embeds the graph R = {(x, F(x))} into F_2^(m+1) with the function value
/// as the least significant bit and checks it as a relative difference set
/// with forbidden subgroup {0, 1}. For bent F the parameters come out as
/// (2^m, 2, 2^m, 2^(m-1)).
pub fn graph_rds_check(f: &TruthTable) -> RdsReport {
    let graph: Vec<FieldElem> = (0..f.len() as u32)
        .map(|x| (x << 1) | f.get(x) as u32)
        .collect();
    check_rds(&graph, &[0, 1], f.m() + 1).expect("graph set and {0,1} are always valid inputs")
}

/// Direct perfect-nonlinearity test: every nonzero derivative direction
/// splits the domain evenly between F(x+a) = F(x) and F(x+a) != F(x).
pub fn derivative_balance(f: &TruthTable) -> bool {
    let size = f.len() as u32;
    let half = size / 2;
    (1..size).all(|a| {
        let zeros = (0..size).filter(|&x| f.get(x ^ a) == f.get(x)).count() as u32;
        zeros == half
    })
}

/// Bent function recovered from an image set: result of interpreting `image`
/// as the graph of a Boolean function over the complement of a one-dimensional
/// direction the differences avoid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageGraph {
    /// The avoided direction c; the forbidden subgroup candidate is {0, c}.
    pub direction: FieldElem,
    pub table: TruthTable,
}

/// Tries to read `image` as the graph of a Boolean function: looks for a
/// nonzero direction c no difference of image elements attains, completes
/// {c} to the deterministic basis, and checks that the projection away from
/// c is a bijection onto F_2^(n-1). Candidates are tried in increasing
/// order; returns None when no direction yields a graph.
pub fn bent_from_image(spec: FieldSpec, image: &[FieldElem]) -> Result<Option<ImageGraph>> {
    if image.len() != spec.size() / 2 {
        return Ok(None);
    }
    let counts = difference_counts(image, spec.n())?;
    let candidates: Vec<FieldElem> = (1..counts.len())
        .filter(|&g| counts[g] == 0)
        .map(|g| g as FieldElem)
        .collect();
    for c in candidates {
        if let Some(table) = graph_over_complement(spec, image, c) {
            return Ok(Some(ImageGraph { direction: c, table }));
        }
    }
    Ok(None)
}

fn graph_over_complement(
    spec: FieldSpec,
    image: &[FieldElem],
    c: FieldElem,
) -> Option<TruthTable> {
    let basis = spec.complete_basis(c).ok()?;
    // coordinates of every field element in that basis
    let mut coords = vec![0u32; spec.size()];
    for u in 0..spec.size() as u32 {
        coords[expand(&basis, u) as usize] = u;
    }
    let m = spec.n() - 1;
    let mut bits = vec![2u8; 1 << m]; // 2 = unset
    for &d in image {
        let u = coords[d as usize];
        let rest = u >> 1;
        if bits[rest as usize] != 2 {
            return None; // projection collides
        }
        bits[rest as usize] = (u & 1) as u8;
    }
    if bits.contains(&2) {
        return None; // projection misses a point
    }
    TruthTable::from_bits(m, bits).ok()
}
