#pragma once

#include "dronevoc/kernels.hpp"

namespace dronevoc::kernels {

const Ops& scalar_ops();

// Null when the translation unit was built without AVX2 support.
const Ops* avx2_ops();

}  // namespace dronevoc::kernels
