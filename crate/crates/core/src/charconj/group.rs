//! Finite groups given by multiplication tables, with brute-force conjugacy
//! classes, subgroups and double cosets.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CharError, LawViolation};
use crate::numeric::lcm;

/// Largest group order accepted by default.
pub const MAX_ORDER: usize = 48;

/// Element indices run over `0..order`; `0` is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    label: String,
    order: usize,
    table: Vec<usize>,
    inverses: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    names: Vec<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

/// On-disk group definition: `order`, a row-major `table` (flat or as rows),
/// and optional element `names`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupDefinition {
    #[serde(default)]
    pub label: Option<String>,
    pub order: usize,
    pub table: TableLayout,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TableLayout {
    Flat(Vec<usize>),
    Rows(Vec<Vec<usize>>),
}

impl FiniteGroup {
    /// Validates a row-major table (`table[a * n + b] = a·b`) and computes
    /// inverses and conjugacy classes.
    pub fn from_table(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
    ) -> Result<Self, CharError> {
        Self::from_table_capped(label, order, table, names, MAX_ORDER)
    }

    pub fn from_table_capped(
        label: impl Into<String>,
        order: usize,
        table: Vec<usize>,
        names: Option<Vec<String>>,
        cap: usize,
    ) -> Result<Self, CharError> {
        let n = order;
        if n == 0 {
            return Err(CharError::NotAGroup(LawViolation::Empty));
        }
        if n > cap {
            return Err(CharError::TooLarge { order: n, cap });
        }
        if table.len() != n * n {
            return Err(CharError::NotAGroup(LawViolation::Shape {
                expected: n * n,
                found: table.len(),
            }));
        }
        if let Some(pos) = table.iter().position(|&x| x >= n) {
            return Err(CharError::NotAGroup(LawViolation::OutOfRange {
                a: pos / n,
                b: pos % n,
                value: table[pos],
            }));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        for a in 0..n {
            if mul(0, a) != a || mul(a, 0) != a {
                return Err(CharError::NotAGroup(LawViolation::Identity { element: a }));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(CharError::NotAGroup(LawViolation::Associativity {
                            a,
                            b,
                            c,
                        }));
                    }
                }
            }
        }
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == 0 && mul(b, a) == 0) {
                Some(b) => inverses.push(b),
                None => return Err(CharError::NotAGroup(LawViolation::Inverse { element: a })),
            }
        }
        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => {
                return Err(CharError::NotAGroup(LawViolation::Shape {
                    expected: n,
                    found: v.len(),
                }))
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };

        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let members: BTreeSet<usize> = (0..n).map(|x| mul(mul(inverses[x], g), x)).collect();
            let idx = classes.len();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members.into_iter().collect());
        }

        Ok(FiniteGroup {
            label: label.into(),
            order: n,
            table,
            inverses,
            classes,
            class_of,
            names,
        })
    }

    pub fn from_definition(def: GroupDefinition) -> Result<Self, CharError> {
        let table = match def.table {
            TableLayout::Flat(t) => t,
            TableLayout::Rows(rows) => {
                if rows.iter().any(|r| r.len() != def.order) {
                    return Err(CharError::NotAGroup(LawViolation::Shape {
                        expected: def.order,
                        found: rows.len(),
                    }));
                }
                rows.into_iter().flatten().collect()
            }
        };
        Self::from_table(
            def.label.unwrap_or_else(|| "custom".to_string()),
            def.order,
            table,
            def.names,
        )
    }

    pub fn from_json(json: &str) -> Result<Self, CharError> {
        let def: GroupDefinition =
            serde_json::from_str(json).map_err(|e| CharError::Definition(e.to_string()))?;
        Self::from_definition(def)
    }

    pub fn to_definition(&self) -> GroupDefinition {
        GroupDefinition {
            label: Some(self.label.clone()),
            order: self.order,
            table: TableLayout::Flat(self.table.clone()),
            names: Some(self.names.clone()),
        }
    }

    /// Closure of a set of permutations of `0..degree`, identity first, then
    /// in breadth-first order over the generators.
    pub fn from_permutations(
        label: impl Into<String>,
        degree: usize,
        generators: &[Vec<usize>],
    ) -> Result<Self, CharError> {
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in generators {
                // apply g after elements[i]
                let next: Vec<usize> = elements[i].iter().map(|&x| g[x]).collect();
                if !index.contains_key(&next) {
                    if elements.len() >= MAX_ORDER {
                        return Err(CharError::TooLarge {
                            order: elements.len() + 1,
                            cap: MAX_ORDER,
                        });
                    }
                    index.insert(next.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                // (a·b)(x) = a(b(x))
                let prod: Vec<usize> = elements[b].iter().map(|&x| elements[a][x]).collect();
                table[a * n + b] = index[&prod];
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Self::from_table(label, n, table, Some(names))
    }

    pub fn cyclic(n: usize) -> Result<Self, CharError> {
        if n == 0 {
            return Err(CharError::NotAGroup(LawViolation::Empty));
        }
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g^{k}"),
            })
            .collect();
        Self::from_table(format!("C{n}"), n, table, Some(names))
    }

    /// Symmetries of the regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Result<Self, CharError> {
        if n < 3 {
            return Err(CharError::Definition(format!(
                "dihedral group needs n >= 3, got {n}"
            )));
        }
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(format!("D{n}"), n, &[rotation, reflection])
    }

    pub fn symmetric(n: usize) -> Result<Self, CharError> {
        if n == 0 {
            return Err(CharError::NotAGroup(LawViolation::Empty));
        }
        let mut gens = Vec::new();
        if n > 1 {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            gens.push(swap);
            gens.push((0..n).map(|i| (i + 1) % n).collect());
        }
        Self::from_permutations(format!("S{n}"), n, &gens)
    }

    /// `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> Result<Self, CharError> {
        // element 2u + s is (-1)^s · unit u, units 1, i, j, k
        let unit_mul = |a: usize, b: usize| -> (usize, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (x, 0),
                (x, y) if x == y => (0, 1),
                (1, 2) => (3, 0),
                (2, 3) => (1, 0),
                (3, 1) => (2, 0),
                (2, 1) => (3, 1),
                (3, 2) => (1, 1),
                (1, 3) => (2, 1),
                _ => unreachable!(),
            }
        };
        let mut table = vec![0; 64];
        for a in 0..8 {
            for b in 0..8 {
                let (u, s) = unit_mul(a / 2, b / 2);
                table[a * 8 + b] = 2 * u + ((s + a % 2 + b % 2) % 2);
            }
        }
        let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
            .map(String::from)
            .to_vec();
        Self::from_table("Q8", 8, table, Some(names))
    }

    /// Parses `C<n>`, `D<n>`, `S<n>` or `Q8`.
    pub fn builtin(name: &str) -> Result<Self, CharError> {
        let unknown = || CharError::Definition(format!("unknown built-in group {name:?}"));
        if name == "Q8" {
            return Self::quaternion();
        }
        let (kind, n) = name.split_at(name.char_indices().nth(1).map_or(name.len(), |(i, _)| i));
        let n: usize = n.parse().map_err(|_| unknown())?;
        match kind {
            "C" => Self::cyclic(n),
            "D" => Self::dihedral(n),
            "S" => Self::symmetric(n),
            _ => Err(unknown()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `x⁻¹ g x`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(self.inverses[x], g), x)
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Smallest index in each class.
    pub fn class_representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1, |acc, g| lcm(acc, self.element_order(g) as u64))
    }

    /// Subgroup generated by `gens`, as sorted element indices.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&i| seen[i]).collect()
    }
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        let parts: Vec<String> = cycle.iter().map(ToString::to_string).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

/// A subgroup `H ≤ G`, carrying its own group structure on local indices
/// `0..|H|` (sorted by parent index, so local `0` is the identity).
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    group: Arc<FiniteGroup>,
    embedding: Vec<usize>,
    local: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn new(parent: &Arc<FiniteGroup>, elements: &[usize]) -> Result<Self, CharError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() != Some(&0) || elems.iter().any(|&g| g >= parent.order()) {
            return Err(CharError::NotSubgroup);
        }
        let mut local = vec![None; parent.order()];
        for (i, &g) in elems.iter().enumerate() {
            local[g] = Some(i);
        }
        let k = elems.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &elems {
            for &b in &elems {
                match local[parent.mul(a, b)] {
                    Some(c) => table.push(c),
                    None => return Err(CharError::NotSubgroup),
                }
            }
        }
        let names = elems.iter().map(|&g| parent.name(g).to_string()).collect();
        let label = format!("{}[{}]", parent.label(), k);
        let group = FiniteGroup::from_table_capped(label, k, table, Some(names), usize::MAX)?;
        Ok(Subgroup {
            parent: Arc::clone(parent),
            group: Arc::new(group),
            embedding: elems,
            local,
        })
    }

    pub fn generated(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self, CharError> {
        Self::new(parent, &parent.generate(gens))
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &(0..parent.order()).collect::<Vec<_>>())
            .expect("whole group is a subgroup")
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Self::new(parent, &[0]).expect("trivial subgroup")
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.embedding.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// Parent indices of the members, ascending.
    pub fn elements(&self) -> &[usize] {
        &self.embedding
    }

    /// Parent index of a local element.
    pub fn to_parent(&self, h: usize) -> usize {
        self.embedding[h]
    }

    /// Local index of a parent element, if it belongs to the subgroup.
    pub fn to_local(&self, g: usize) -> Option<usize> {
        self.local[g]
    }

    pub fn contains(&self, g: usize) -> bool {
        self.local[g].is_some()
    }
}

/// Double cosets `K g H` in `G`, each sorted, ordered by smallest member.
pub fn double_cosets(g: &FiniteGroup, k: &Subgroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; g.order()];
    let mut out = Vec::new();
    for s in 0..g.order() {
        if assigned[s] {
            continue;
        }
        let coset: BTreeSet<usize> = k
            .elements()
            .iter()
            .flat_map(|&x| h.elements().iter().map(move |&y| (x, y)))
            .map(|(x, y)| g.mul(g.mul(x, s), y))
            .collect();
        for &c in &coset {
            assigned[c] = true;
        }
        out.push(coset.into_iter().collect());
    }
    out
}
