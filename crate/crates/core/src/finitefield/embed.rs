use super::FieldDescriptor;
use crate::error::{Error, Result};
use crate::upoly;

/// Embedding `F_{p^k} -> F_{p^{kj}}` sending the modulus class of the source
/// to the least (by encoding) root of the source modulus in the target.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    source: FieldDescriptor,
    target: FieldDescriptor,
    /// Images of `1, g, ..., g^{k-1}`.
    basis: Vec<u64>,
    /// Row-reduced data for inverting on the image: pivot columns and the
    /// transform turning target digits into source digits.
    pivots: Vec<usize>,
    solve: Vec<Vec<u64>>,
}

impl FieldEmbedding {
    pub fn new(source: &FieldDescriptor, target: &FieldDescriptor) -> Result<Self> {
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::InvalidArgument(format!("{source} does not embed into {target}")));
        }
        let k = source.k() as usize;
        let basis = if source.is_prime_field() {
            vec![1]
        } else {
            let m: Vec<u64> = source.modulus().to_vec();
            let roots = upoly::roots(target, &m);
            let g = *roots.iter().min().ok_or_else(|| {
                Error::InvalidArgument(format!("modulus of {source} has no root in {target}"))
            })?;
            let mut basis = Vec::with_capacity(k);
            let mut acc = 1u64;
            for _ in 0..k {
                basis.push(acc);
                acc = target.mul(acc, g);
            }
            basis
        };
        let (pivots, solve) = Self::prepare_inverse(target, &basis);
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), basis, pivots, solve })
    }

    /// Gaussian elimination over `F_p` on the `K x k` matrix whose columns
    /// are the target digits of the basis images. We record `k` pivot rows
    /// and the inverse of the corresponding `k x k` minor.
    fn prepare_inverse(target: &FieldDescriptor, basis: &[u64]) -> (Vec<usize>, Vec<Vec<u64>>) {
        let fp = FieldDescriptor::prime(target.p()).expect("prime field");
        let k = basis.len();
        let big = target.k() as usize;
        let cols: Vec<Vec<u64>> = basis.iter().map(|&b| target.digits(b)).collect();
        // Choose k linearly independent rows greedily.
        let mut pivots = Vec::new();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        let mut echelon: Vec<(usize, Vec<u64>)> = Vec::new();
        for r in 0..big {
            let row: Vec<u64> = (0..k).map(|c| cols[c][r]).collect();
            let mut red = row.clone();
            for (pc, e) in &echelon {
                let f = red[*pc];
                if f != 0 {
                    for c in 0..k {
                        red[c] = fp.sub(red[c], fp.mul(f, e[c]));
                    }
                }
            }
            if let Some(pc) = red.iter().position(|&v| v != 0) {
                let inv = fp.inv(red[pc]);
                for v in red.iter_mut() {
                    *v = fp.mul(*v, inv);
                }
                echelon.push((pc, red));
                pivots.push(r);
                rows.push(row);
                if pivots.len() == k {
                    break;
                }
            }
        }
        // Invert the k x k minor `rows` by Gauss-Jordan.
        let mut aug: Vec<Vec<u64>> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut v = r.clone();
                v.extend((0..k).map(|j| u64::from(i == j)));
                v
            })
            .collect();
        for c in 0..k {
            let piv = (c..k).find(|&r| aug[r][c] != 0).expect("independent rows");
            aug.swap(c, piv);
            let inv = fp.inv(aug[c][c]);
            for v in aug[c].iter_mut() {
                *v = fp.mul(*v, inv);
            }
            for r in 0..k {
                if r != c && aug[r][c] != 0 {
                    let f = aug[r][c];
                    let src = aug[c].clone();
                    for (v, s) in aug[r].iter_mut().zip(src) {
                        *v = fp.sub(*v, fp.mul(f, s));
                    }
                }
            }
        }
        let solve = aug.into_iter().map(|r| r[k..].to_vec()).collect();
        (pivots, solve)
    }

    pub fn source(&self) -> &FieldDescriptor {
        &self.source
    }

    pub fn target(&self) -> &FieldDescriptor {
        &self.target
    }

    /// Image of the source modulus class.
    pub fn generator_image(&self) -> u64 {
        self.basis.get(1).copied().unwrap_or(1)
    }

    pub fn map(&self, a: u64) -> u64 {
        if self.source.is_prime_field() {
            return a;
        }
        let t = &self.target;
        self.source
            .digits(a)
            .iter()
            .zip(&self.basis)
            .fold(0, |acc, (&d, &b)| if d == 0 { acc } else { t.add(acc, t.scale(d, b)) })
    }

    /// Preimage of `b`, or `None` when `b` is outside the image.
    pub fn preimage(&self, b: u64) -> Option<u64> {
        if self.source.is_prime_field() {
            return self.target.is_prime_subfield(b).then_some(b);
        }
        let p = self.target.p();
        let digits = self.target.digits(b);
        let k = self.basis.len();
        let rhs: Vec<u64> = self.pivots.iter().map(|&r| digits[r]).collect();
        let sol: Vec<u64> = (0..k)
            .map(|i| (0..k).fold(0u64, |acc, j| (acc + self.solve[i][j] * rhs[j]) % p))
            .collect();
        let a = self.source.from_digits(&sol).ok()?;
        (self.map(a) == b).then_some(a)
    }
}

#[cfg(test)]
mod tests {
    use crate::finitefield::construct_field;

    #[test]
    fn embedding_is_a_homomorphism() {
        for (p, k, j) in [(2u64, 2u32, 3u32), (3, 2, 2), (5, 1, 3), (2, 3, 2)] {
            let src = construct_field(p, k).unwrap();
            let emb = src.extension(j).unwrap();
            let t = emb.target().clone();
            for a in src.elements() {
                for b in src.elements().step_by(3) {
                    assert_eq!(emb.map(src.mul(a, b)), t.mul(emb.map(a), emb.map(b)));
                    assert_eq!(emb.map(src.add(a, b)), t.add(emb.map(a), emb.map(b)));
                }
                assert_eq!(emb.preimage(emb.map(a)), Some(a));
            }
            let outside = t.elements().filter(|&b| emb.preimage(b).is_some()).count() as u64;
            assert_eq!(outside, src.order());
        }
    }
}
