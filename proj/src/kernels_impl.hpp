#ifndef IDC_KERNELS_IMPL_HPP_
#define IDC_KERNELS_IMPL_HPP_

#include "idc/kernels.hpp"

namespace idc::kernels {

extern const dispatch_table scalar_table;

#if IDC_HAVE_AVX2
extern const dispatch_table avx2_table;
#endif

} // namespace idc::kernels

#endif
