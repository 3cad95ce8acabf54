use super::term::PrTerm;
use super::PrError;

/// Evaluate `term` on `args`, spending one unit of fuel per node
/// application and per recursion step.
pub fn pr_eval(term: &PrTerm, args: &[u64], fuel: u64) -> Result<u64, PrError> {
    if term.arity() != args.len() {
        return Err(PrError::Arity {
            node: term.to_string(),
            message: format!(
                "term has arity {} but {} arguments were given",
                term.arity(),
                args.len()
            ),
        });
    }
    Machine { fuel }.run(term, args)
}

struct Machine {
    fuel: u64,
}

impl Machine {
    fn tick(&mut self) -> Result<(), PrError> {
        if self.fuel == 0 {
            return Err(PrError::FuelExhausted);
        }
        self.fuel -= 1;
        Ok(())
    }

    fn run(&mut self, term: &PrTerm, args: &[u64]) -> Result<u64, PrError> {
        self.tick()?;
        match term {
            PrTerm::Zero => Ok(0),
            PrTerm::Succ => args[0].checked_add(1).ok_or(PrError::Overflow),
            PrTerm::Proj { index, .. } => Ok(args[index - 1]),
            PrTerm::Comp { outer, inner, .. } => {
                let vals = inner
                    .iter()
                    .map(|g| self.run(g, args))
                    .collect::<Result<Vec<_>, _>>()?;
                self.run(outer, &vals)
            }
            PrTerm::PrimRec { base, step, .. } => {
                let (&y, params) = args.split_last().expect("recursion has arity >= 2");
                let mut acc = self.run(base, params)?;
                let mut frame = Vec::with_capacity(args.len() + 1);
                frame.extend_from_slice(params);
                frame.extend([0, 0]);
                let last = frame.len() - 1;
                for t in 0..y {
                    self.tick()?;
                    frame[last - 1] = t;
                    frame[last] = acc;
                    acc = self.run(step, &frame)?;
                }
                Ok(acc)
            }
        }
    }
}
