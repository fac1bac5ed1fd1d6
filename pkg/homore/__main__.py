from homore.cli import main

main()
