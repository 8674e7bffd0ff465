// Starter <hostname>: supervises the device servers registered for one host.

#include "tng/server/runtime.hpp"
#include "tng/starter/starter_device.hpp"

int main(int argc, char** argv)
{
    return tng::server::server_main(argc, argv, {tng::starter::make_starter_class()});
}
