//! Exact first and second derivatives of a user-defined map.
//!
//! Any function written once against the `Scalar` trait can be evaluated on
//! plain floats, on first-order duals, or on hyper-duals.

use moufang::jet::{
    fd_oracle, jacobian, lift_map, Argument, ChartMap, Coordinate, DerivativeRequest, Order, Scalar,
};

/// Group law of the Heisenberg group in exponential coordinates,
/// `(a, b, c)(x, y, z) = (a + x, b + y, c + z + (a y - b x) / 2)`.
struct Heisenberg;

impl ChartMap for Heisenberg {
    fn arity(&self) -> usize {
        2
    }

    fn argument_dim(&self) -> usize {
        3
    }

    fn output_dim(&self) -> usize {
        3
    }

    fn eval<S: Scalar>(&self, input: &[S]) -> moufang::Result<Vec<S>> {
        let (g, h) = input.split_at(3);
        let twist = (g[0] * h[1] - g[1] * h[0]).scale(0.5);
        Ok(vec![g[0] + h[0], g[1] + h[1], g[2] + h[2] + twist])
    }
}

fn main() -> moufang::Result<()> {
    let point = [0.3, -0.1, 0.2, 0.5, 0.4, -0.7];

    // Jacobian with respect to the second factor only.
    let jh = jacobian(&Heisenberg, &point, &[3, 4, 5])?;
    println!("d(gh)/dh =\n{jh:.4}");

    // Value, gradient and Hessian along g0 and h1 in one request.
    let request = DerivativeRequest::new(Argument::First, &[0], Order::Second);
    let jets = lift_map(&Heisenberg, &request)?.eval(&point)?;
    println!("d(gh)_2/dg0 = {:.6}", jets[2].first[0]);

    let request = DerivativeRequest::with_coordinates(
        vec![
            Coordinate::new(Argument::First, 0),
            Coordinate::new(Argument::Second, 1),
        ],
        Order::Second,
    );
    let exact = lift_map(&Heisenberg, &request)?.eval(&point)?;
    let approx = fd_oracle(&Heisenberg, &point, &request, None)?;
    println!(
        "mixed partial d2(gh)_2/dg0 dh1: jet {:.12}, finite differences {:.12}",
        exact[2].second[0][1], approx[2].second[0][1]
    );
    Ok(())
}
