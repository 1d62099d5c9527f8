#pragma once

namespace ccma {

// Text of the bundled F_16^13 instance, identical to data/f16_13.instance.
const char* embedded_instance_text();

}  // namespace ccma
