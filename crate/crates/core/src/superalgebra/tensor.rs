//! Dense tensors with polynomial entries.

use super::poly::XPoly;
use crate::rational::Q;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    dims: Vec<usize>,
    data: Vec<XPoly>,
}

/// All permutations of `0..k` with their signs.
pub fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out.into_iter()
        .map(|p| {
            let s = crate::canon::permutation_sign(&p) as i64;
            (p, s)
        })
        .collect()
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

impl Tensor {
    pub fn zeros(dims: &[usize]) -> Tensor {
        let len = dims.iter().product();
        Tensor { dims: dims.to_vec(), data: vec![XPoly::zero(); len] }
    }

    pub fn from_fn(dims: &[usize], mut f: impl FnMut(&[usize]) -> XPoly) -> Tensor {
        let mut t = Tensor::zeros(dims);
        let mut idx = vec![0; dims.len()];
        for slot in 0..t.data.len() {
            t.data[slot] = f(&idx);
            Tensor::advance(dims, &mut idx);
        }
        t
    }

    fn advance(dims: &[usize], idx: &mut [usize]) {
        for pos in (0..dims.len()).rev() {
            idx[pos] += 1;
            if idx[pos] < dims[pos] {
                return;
            }
            idx[pos] = 0;
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn rank(&self) -> usize {
        self.dims.len()
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.dims.len());
        idx.iter().zip(&self.dims).fold(0, |acc, (&i, &d)| {
            debug_assert!(i < d);
            acc * d + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &XPoly {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], v: XPoly) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    /// Every multi-index in row-major order.
    pub fn indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.data.len());
        let mut idx = vec![0; self.dims.len()];
        for _ in 0..self.data.len() {
            out.push(idx.clone());
            Tensor::advance(&self.dims, &mut idx);
        }
        out
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &XPoly)> {
        self.indices().into_iter().zip(self.data.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn map(&self, f: impl Fn(&XPoly) -> XPoly) -> Tensor {
        Tensor { dims: self.dims.clone(), data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Q) -> Tensor {
        self.map(|x| x.scale(c))
    }

    pub fn add(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.dims, o.dims, "tensor shapes differ");
        Tensor { dims: self.dims.clone(), data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Tensor) -> Tensor {
        assert_eq!(self.dims, o.dims, "tensor shapes differ");
        Tensor { dims: self.dims.clone(), data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect() }
    }

    fn average(&self, slots: &[usize], signed: bool) -> Tensor {
        let perms = permutations(slots.len());
        let w = Q::one() / Q::from_integer(factorial(slots.len()).into());
        Tensor::from_fn(&self.dims, |idx| {
            let mut acc = XPoly::zero();
            let mut j = idx.to_vec();
            for (p, s) in &perms {
                for (k, &slot) in slots.iter().enumerate() {
                    j[slot] = idx[slots[p[k]]];
                }
                let t = self.get(&j);
                acc = if signed && *s < 0 { &acc - t } else { &acc + t };
            }
            acc.scale(&w)
        })
    }

    /// `T_{[i₁…i_k]}` over the given slots, weight `1/k!`.
    pub fn antisymmetrize(&self, slots: &[usize]) -> Tensor {
        self.average(slots, true)
    }

    /// `T_{(i₁…i_k)}` over the given slots, weight `1/k!`.
    pub fn symmetrize(&self, slots: &[usize]) -> Tensor {
        self.average(slots, false)
    }

    pub fn is_antisymmetric(&self, slots: &[usize]) -> bool {
        self.antisymmetrize(slots) == *self
    }

    pub fn is_symmetric(&self, slots: &[usize]) -> bool {
        self.symmetrize(slots) == *self
    }
}
