#pragma once

// Pointwise and reduction kernels behind the grid_field operations.
//
// Every kernel exists twice: an OpenMP version used by the solver and a plain
// serial reference used by the tests and the benchmark. Reductions sum each
// x-line first into its own slot and then add the line sums in order, so the
// parallel and serial versions agree to the bit for any thread count.

#include <span>
#include <vector>

#include "qflow/grid_field.hpp"

namespace qflow::kernels {

void lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields, TensorField& out);
void map_bulk(const TensorField& field, const ModelParams& p, BulkMap which, TensorField& out);
void map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w, TensorField& out);
FieldNorms field_reduce(const TensorField& field);
double elastic_energy(const TensorField& field, double c);
double bulk_energy(const TensorField& field, const ModelParams& p);

/// Maximum number of OpenMP threads the kernels will use.
int max_threads();

namespace reference {

void lincomb(std::span<const double> coeffs, std::span<const TensorField* const> fields, TensorField& out);
void map_bulk(const TensorField& field, const ModelParams& p, BulkMap which, TensorField& out);
void map_taylor(const TensorField& field, const ModelParams& p, double a, double b, double w, TensorField& out);
FieldNorms field_reduce(const TensorField& field);
double elastic_energy(const TensorField& field, double c);
double bulk_energy(const TensorField& field, const ModelParams& p);

}  // namespace reference

}  // namespace qflow::kernels
