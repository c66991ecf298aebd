from frobstab.cli import main

main()
