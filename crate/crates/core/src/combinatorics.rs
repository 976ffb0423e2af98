/// Strictly increasing `t`-tuples drawn from `0..n`, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Vec<usize>,
    first: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, t: usize) -> Self {
        Combinations {
            n,
            current: (0..t).collect(),
            first: true,
            done: t > n,
        }
    }

    /// Advances in place; lets hot loops avoid allocating each tuple.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
            return Some(&self.current);
        }
        let t = self.current.len();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.n - t + i {
                self.current[i] += 1;
                for j in i + 1..t {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return Some(&self.current);
            }
        }
        self.done = true;
        None
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        self.advance().map(<[usize]>::to_vec)
    }
}

pub fn binomial(n: usize, t: usize) -> u64 {
    if t > n {
        return 0;
    }
    let t = t.min(n - t);
    (0..t).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}
