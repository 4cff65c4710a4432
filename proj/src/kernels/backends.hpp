#pragma once

#include "robfrechet/kernels.hpp"

namespace robfrechet::kernels::detail {

extern const KernelTable scalar_table;
#if ROBFRECHET_HAVE_AVX2
extern const KernelTable avx2_table;
#endif
#if ROBFRECHET_HAVE_NEON
extern const KernelTable neon_table;
#endif

}  // namespace robfrechet::kernels::detail
