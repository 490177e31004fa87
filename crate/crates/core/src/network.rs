//! Dense tensor networks over Q(ζ_N) with greedy pairwise contraction.

use crate::algebra::Cyclotomic;

/// A dense tensor; `indices[i]` names axis i, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    pub indices: Vec<usize>,
    pub dims: Vec<usize>,
    pub data: Vec<Cyclotomic>,
}

impl Tensor {
    pub fn new(indices: Vec<usize>, dims: Vec<usize>, data: Vec<Cyclotomic>) -> Self {
        debug_assert_eq!(indices.len(), dims.len());
        debug_assert_eq!(dims.iter().product::<usize>(), data.len());
        Tensor { indices, dims, data }
    }

    pub fn scalar(v: Cyclotomic) -> Self {
        Tensor { indices: vec![], dims: vec![], data: vec![v] }
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Reorders axes so that axis i of the result is `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Tensor {
        let axes: Vec<usize> = order
            .iter()
            .map(|ix| self.indices.iter().position(|j| j == ix).expect("index present"))
            .collect();
        if axes.iter().enumerate().all(|(i, &a)| i == a) {
            return self.clone();
        }
        let dims: Vec<usize> = axes.iter().map(|&a| self.dims[a]).collect();
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        let n = self.data.len();
        let mut data = Vec::with_capacity(n);
        let mut counter = vec![0usize; dims.len()];
        for _ in 0..n {
            let src: usize = counter.iter().zip(&axes).map(|(&c, &a)| c * strides[a]).sum();
            data.push(self.data[src].clone());
            for k in (0..counter.len()).rev() {
                counter[k] += 1;
                if counter[k] < dims[k] {
                    break;
                }
                counter[k] = 0;
            }
        }
        Tensor { indices: order.to_vec(), dims, data }
    }
}

fn result_size(a: &Tensor, b: &Tensor) -> usize {
    let free = |x: &Tensor, y: &Tensor| -> usize {
        x.indices.iter().zip(&x.dims).filter(|(i, _)| !y.indices.contains(i)).map(|(_, d)| *d).product()
    };
    free(a, b) * free(b, a)
}

/// Contracts all indices shared by `a` and `b`.
pub fn contract_pair(a: &Tensor, b: &Tensor, modulus: u32) -> Tensor {
    let shared: Vec<usize> = a.indices.iter().copied().filter(|i| b.indices.contains(i)).collect();
    let free_a: Vec<usize> = a.indices.iter().copied().filter(|i| !shared.contains(i)).collect();
    let free_b: Vec<usize> = b.indices.iter().copied().filter(|i| !shared.contains(i)).collect();
    let pa = a.permuted(&[free_a.clone(), shared.clone()].concat());
    let pb = b.permuted(&[shared.clone(), free_b.clone()].concat());
    let dim_of = |x: &Tensor, i: &usize| x.dims[x.indices.iter().position(|j| j == i).expect("index present")];
    let k: usize = shared.iter().map(|i| dim_of(a, i)).product();
    let rows: usize = free_a.iter().map(|i| dim_of(a, i)).product();
    let cols: usize = free_b.iter().map(|i| dim_of(b, i)).product();
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let mut acc = Cyclotomic::zero(modulus);
            for s in 0..k {
                let x = &pa.data[r * k + s];
                let y = &pb.data[s * cols + c];
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            data.push(acc);
        }
    }
    let mut dims: Vec<usize> = pa.dims[..free_a.len()].to_vec();
    dims.extend_from_slice(&pb.dims[shared.len()..]);
    Tensor { indices: [free_a, free_b].concat(), dims, data }
}

/// Contracts a network greedily, always merging the pair with the smallest
/// result; the output axes follow `open`.
pub fn contract_network(mut tensors: Vec<Tensor>, open: &[usize], modulus: u32) -> Tensor {
    if tensors.is_empty() {
        return Tensor::scalar(Cyclotomic::one(modulus));
    }
    while tensors.len() > 1 {
        let mut best: Option<(bool, usize, usize, usize)> = None;
        for i in 0..tensors.len() {
            for j in i + 1..tensors.len() {
                let connected = tensors[i].indices.iter().any(|x| tensors[j].indices.contains(x));
                let size = result_size(&tensors[i], &tensors[j]);
                let key = (!connected, size, i, j);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, _, i, j) = best.expect("at least two tensors");
        let b = tensors.swap_remove(j);
        let a = tensors.swap_remove(i);
        tensors.push(contract_pair(&a, &b, modulus));
    }
    tensors.pop().expect("one tensor left").permuted(open)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Cyclotomic {
        Cyclotomic::from_int(1, v)
    }

    fn t(ix: &[usize], dims: &[usize], vals: &[i64]) -> Tensor {
        Tensor::new(ix.to_vec(), dims.to_vec(), vals.iter().map(|&v| int(v)).collect())
    }

    #[test]
    fn matrix_product() {
        // [[1,2],[3,4]] · [[5,6],[7,8]]
        let a = t(&[0, 1], &[2, 2], &[1, 2, 3, 4]);
        let b = t(&[1, 2], &[2, 2], &[5, 6, 7, 8]);
        let c = contract_network(vec![a, b], &[0, 2], 1);
        assert_eq!(c.data, [19, 22, 43, 50].map(int).to_vec());
    }

    #[test]
    fn trace_of_a_cycle() {
        let a = t(&[0, 1], &[2, 2], &[1, 2, 3, 4]);
        let b = t(&[1, 2], &[2, 2], &[0, 1, 1, 0]);
        let c = t(&[2, 0], &[2, 2], &[1, 0, 0, 1]);
        // tr(A·S) with S the swap = 2 + 3
        let r = contract_network(vec![a, b, c], &[], 1);
        assert_eq!(r.data, vec![int(5)]);
    }

    #[test]
    fn permutation_and_outer_product() {
        let a = t(&[0, 1], &[2, 3], &[1, 2, 3, 4, 5, 6]);
        let p = a.permuted(&[1, 0]);
        assert_eq!(p.dims, vec![3, 2]);
        assert_eq!(p.data, [1, 4, 2, 5, 3, 6].map(int).to_vec());
        let u = t(&[5], &[2], &[1, 2]);
        let v = t(&[6], &[2], &[3, 4]);
        let o = contract_network(vec![u, v], &[6, 5], 1);
        assert_eq!(o.data, [3, 6, 4, 8].map(int).to_vec());
    }

    #[test]
    fn zero_extent_contracts_to_zero() {
        let a = t(&[0], &[0], &[]);
        let b = t(&[0], &[0], &[]);
        let r = contract_network(vec![a, b], &[], 1);
        assert_eq!(r.data, vec![int(0)]);
    }
}
