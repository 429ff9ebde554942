pub mod adjoint;
pub mod delta;
pub mod equidist;
pub mod kernels;
pub mod kf;
pub mod moments;
pub mod scaling;
