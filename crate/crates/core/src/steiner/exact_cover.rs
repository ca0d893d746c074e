//! Dancing links over a 0/1 cover matrix.

/// How a search ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The whole tree was explored.
    Complete,
    /// The callback asked to stop.
    Stopped,
    /// The node budget ran out first.
    BudgetExhausted,
}

/// Exact cover of the columns `0..ncols` by a subset of the rows.
///
/// Column choice is minimum remaining values, ties to the lowest column;
/// within a column, rows are tried in insertion order.
pub struct ExactCover {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    down: Vec<usize>,
    column: Vec<usize>,
    row_id: Vec<usize>,
    size: Vec<usize>,
    nodes_visited: u64,
}

const ROOT: usize = 0;

impl ExactCover {
    pub fn new(ncols: usize) -> Self {
        let headers = ncols + 1;
        ExactCover {
            left: (0..headers).map(|i| if i == 0 { ncols } else { i - 1 }).collect(),
            right: (0..headers).map(|i| if i == ncols { 0 } else { i + 1 }).collect(),
            up: (0..headers).collect(),
            down: (0..headers).collect(),
            column: (0..headers).collect(),
            row_id: vec![usize::MAX; headers],
            size: vec![0; headers],
            nodes_visited: 0,
        }
    }

    /// Appends a row covering the given columns, labelled `id` in solutions.
    pub fn add_row(&mut self, id: usize, cols: &[usize]) {
        let mut first: Option<usize> = None;
        for &c in cols {
            let header = c + 1;
            let node = self.left.len();
            let bottom = self.up[header];
            self.up.push(bottom);
            self.down.push(header);
            self.down[bottom] = node;
            self.up[header] = node;
            self.column.push(header);
            self.row_id.push(id);
            self.size[header] += 1;
            match first {
                None => {
                    self.left.push(node);
                    self.right.push(node);
                    first = Some(node);
                }
                Some(f) => {
                    let last = self.left[f];
                    self.left.push(last);
                    self.right.push(f);
                    self.right[last] = node;
                    self.left[f] = node;
                }
            }
        }
    }

    pub fn nodes_visited(&self) -> u64 {
        self.nodes_visited
    }

    fn cover(&mut self, c: usize) {
        self.right[self.left[c]] = self.right[c];
        self.left[self.right[c]] = self.left[c];
        let mut i = self.down[c];
        while i != c {
            let mut j = self.right[i];
            while j != i {
                self.down[self.up[j]] = self.down[j];
                self.up[self.down[j]] = self.up[j];
                self.size[self.column[j]] -= 1;
                j = self.right[j];
            }
            i = self.down[i];
        }
    }

    fn uncover(&mut self, c: usize) {
        let mut i = self.up[c];
        while i != c {
            let mut j = self.left[i];
            while j != i {
                self.size[self.column[j]] += 1;
                self.down[self.up[j]] = j;
                self.up[self.down[j]] = j;
                j = self.left[j];
            }
            i = self.up[i];
        }
        self.right[self.left[c]] = c;
        self.left[self.right[c]] = c;
    }

    /// Runs the search, handing each solution (row ids in choice order) to
    /// `on_solution`, which returns `false` to stop.
    pub fn search(&mut self, budget: Option<u64>, mut on_solution: impl FnMut(&[usize]) -> bool) -> SearchOutcome {
        let mut partial = Vec::new();
        self.nodes_visited = 0;
        self.descend(&mut partial, budget, &mut on_solution)
    }

    fn descend(
        &mut self,
        partial: &mut Vec<usize>,
        budget: Option<u64>,
        on_solution: &mut impl FnMut(&[usize]) -> bool,
    ) -> SearchOutcome {
        if self.right[ROOT] == ROOT {
            return if on_solution(partial) { SearchOutcome::Complete } else { SearchOutcome::Stopped };
        }
        self.nodes_visited += 1;
        if budget.is_some_and(|b| self.nodes_visited > b) {
            return SearchOutcome::BudgetExhausted;
        }
        let mut best = self.right[ROOT];
        let mut c = self.right[best];
        while c != ROOT {
            if self.size[c] < self.size[best] {
                best = c;
            }
            c = self.right[c];
        }
        if self.size[best] == 0 {
            return SearchOutcome::Complete;
        }
        self.cover(best);
        let mut r = self.down[best];
        let mut outcome = SearchOutcome::Complete;
        while r != best {
            partial.push(self.row_id[r]);
            let mut j = self.right[r];
            while j != r {
                self.cover(self.column[j]);
                j = self.right[j];
            }
            outcome = self.descend(partial, budget, on_solution);
            let mut j = self.left[r];
            while j != r {
                self.uncover(self.column[j]);
                j = self.left[j];
            }
            partial.pop();
            if outcome != SearchOutcome::Complete {
                break;
            }
            r = self.down[r];
        }
        self.uncover(best);
        outcome
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solutions(ncols: usize, rows: &[&[usize]]) -> Vec<Vec<usize>> {
        let mut dlx = ExactCover::new(ncols);
        for (i, r) in rows.iter().enumerate() {
            dlx.add_row(i, r);
        }
        let mut out = Vec::new();
        let outcome = dlx.search(None, |s| {
            let mut s = s.to_vec();
            s.sort_unstable();
            out.push(s);
            true
        });
        assert_eq!(outcome, SearchOutcome::Complete);
        out.sort();
        out
    }

    #[test]
    fn knuth_example() {
        let rows: [&[usize]; 6] = [&[2, 4, 5], &[0, 3, 6], &[1, 2, 5], &[0, 3], &[1, 6], &[3, 4, 6]];
        assert_eq!(solutions(7, &rows), vec![vec![0, 3, 4]]);
    }

    #[test]
    fn perfect_matchings_of_k4() {
        let rows: [&[usize]; 6] = [&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]];
        assert_eq!(solutions(4, &rows), vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn no_cover_and_empty_universe() {
        let rows: [&[usize]; 2] = [&[0, 1], &[1, 2]];
        assert!(solutions(3, &rows).is_empty());
        assert_eq!(solutions(0, &[]), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn stop_and_budget() {
        let rows: [&[usize]; 6] = [&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]];
        let mut dlx = ExactCover::new(4);
        for (i, r) in rows.iter().enumerate() {
            dlx.add_row(i, r);
        }
        let mut seen = 0;
        assert_eq!(dlx.search(None, |_| { seen += 1; false }), SearchOutcome::Stopped);
        assert_eq!(seen, 1);
        assert_eq!(dlx.search(Some(1), |_| true), SearchOutcome::BudgetExhausted);
        // the structure is intact after an interrupted search
        let mut count = 0;
        assert_eq!(dlx.search(None, |_| { count += 1; true }), SearchOutcome::Complete);
        assert_eq!(count, 3);
    }
}
