#include "retro/builtin.hpp"

#include "retro/elementary.hpp"
#include "retro/factorization.hpp"
#include "retro/fourier.hpp"
#include "retro/notation.hpp"
#include "retro/vm.hpp"

namespace retro {

const SuiteRegistry& builtin_registry() {
    static const SuiteRegistry registry = [] {
        SuiteRegistry r;
        r.add(fourier_suite());
        r.add(factorization_suite());
        r.add(notation_suite());
        r.add(vm_suite());
        r.add(sine_forward_suite());
        r.add(sine_backward_suite());
        r.add(reciprocal_integrated_suite());
        return r;
    }();
    return registry;
}

} // namespace retro
