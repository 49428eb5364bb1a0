#pragma once

namespace qotto {

const char* version();  // semantic version of the library/CLI

}  // namespace qotto
