// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace prstl::detail {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace prstl::detail
